#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ahlab/linalg.hpp"

namespace ahlab {

// All scalars with up to 17 significant digits (%.17g): doubles round-trip
// and repeated runs with the same seed produce byte-identical output.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Minimal ordered JSON writer; field order is exactly the call order, which
// is what makes the determinism contract cheap to keep.
class JsonBuilder {
 public:
  JsonBuilder& begin_object() { return open('{'); }
  JsonBuilder& end_object() { return close('}'); }
  JsonBuilder& begin_array() { return open('['); }
  JsonBuilder& end_array() { return close(']'); }

  JsonBuilder& key(const std::string& k) {
    separate();
    out_ << '"' << escape(k) << "\":";
    pending_value_ = true;
    return *this;
  }

  JsonBuilder& value(double v) { return raw(format_double(v)); }
  JsonBuilder& value(int v) { return raw(std::to_string(v)); }
  JsonBuilder& value(long long v) { return raw(std::to_string(v)); }
  JsonBuilder& value(unsigned long long v) { return raw(std::to_string(v)); }
  JsonBuilder& value(bool v) { return raw(v ? "true" : "false"); }
  JsonBuilder& value(const char* v) { return raw('"' + escape(v) + '"'); }
  JsonBuilder& value(const std::string& v) { return raw('"' + escape(v) + '"'); }

  JsonBuilder& value(const Vec& v) {
    begin_array();
    for (int i = 0; i < v.size(); ++i) value(v(i));
    return end_array();
  }

  JsonBuilder& value(const std::vector<double>& v) {
    begin_array();
    for (double x : v) value(x);
    return end_array();
  }

  std::string str() const { return out_.str(); }

 private:
  JsonBuilder& open(char c) {
    separate();
    out_ << c;
    first_.push_back(true);
    return *this;
  }

  JsonBuilder& close(char c) {
    out_ << c;
    first_.pop_back();
    return *this;
  }

  JsonBuilder& raw(const std::string& s) {
    separate();
    out_ << s;
    return *this;
  }

  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ << ',';
      first_.back() = false;
    }
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  }

  std::ostringstream out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

}  // namespace ahlab
