#pragma once

#include <stdexcept>
#include <string>

namespace ahlab {

// Even dimension >= 4 (m >= 2) or an angle outside (0, pi/2): the standing
// hypotheses of the pointwise checks.
class hypothesis_error : public std::invalid_argument {
 public:
  explicit hypothesis_error(const std::string& what) : std::invalid_argument(what) {}
};

// Inputs that fail the orthogonality/unit-norm preconditions of a construction.
class admissibility_error : public std::invalid_argument {
 public:
  explicit admissibility_error(const std::string& what) : std::invalid_argument(what) {}
};

// A 2-plane whose spanning vectors are (numerically) dependent.
class degenerate_plane_error : public std::invalid_argument {
 public:
  explicit degenerate_plane_error(const std::string& what) : std::invalid_argument(what) {}
};

// Chart/patch evaluation outside the declared parameter box (with the
// finite-difference margin) or at a rank-deficient immersion point.
class chart_domain_error : public std::domain_error {
 public:
  explicit chart_domain_error(const std::string& what) : std::domain_error(what) {}
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ahlab
