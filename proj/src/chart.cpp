#include "ahlab/chart.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ahlab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<Expr>> parse_expr_matrix(const nlohmann::json& rows, int dim,
                                                 const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw parse_error(std::string(what) + ": expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<Expr>> out(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw parse_error(std::string(what) + ": row " + std::to_string(i) + " must have " +
                        std::to_string(dim) + " entries");
    out[i].reserve(dim);
    for (int j = 0; j < dim; ++j) out[i].push_back(Expr::parse(row[j].get<std::string>()));
  }
  return out;
}

Mat eval_matrix(const std::vector<std::vector<Expr>>& exprs, const Vec& u) {
  const int n = static_cast<int>(exprs.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = exprs[i][j].eval(u);
  return m;
}

}  // namespace

Mat ChartMetric::g_at(const Vec& u) const {
  if (!in_domain(u))
    throw chart_domain_error("chart '" + name + "': point outside the domain box");
  return eval_matrix(g_exprs, u);
}

Mat ChartMetric::J_at(const Vec& u) const {
  if (!has_J()) throw chart_domain_error("chart '" + name + "' carries no J field");
  if (!in_domain(u))
    throw chart_domain_error("chart '" + name + "': point outside the domain box");
  return eval_matrix(*J_exprs, u);
}

bool ChartMetric::in_domain(const Vec& u, double margin) const {
  if (u.size() != dim) return false;
  for (int i = 0; i < dim; ++i)
    if (u(i) < box_lo(i) + margin || u(i) > box_hi(i) - margin) return false;
  return true;
}

void ChartMetric::require_interior(const Vec& u) const {
  if (!in_domain(u, 3.0 * diff.step))
    throw chart_domain_error("chart '" + name +
                             "': point too close to the domain boundary for differencing");
}

Vec ChartMetric::sample_interior_point(SeededRng& rng) const {
  Vec u(dim);
  for (int i = 0; i < dim; ++i) {
    const double w = box_hi(i) - box_lo(i);
    u(i) = box_lo(i) + w * (0.2 + 0.6 * rng.uniform());
  }
  return u;
}

std::vector<Mat> christoffel(const ChartMetric& chart, const Vec& u) {
  const int n = chart.dim;
  const double h = chart.diff.step;
  const Mat g = chart.g_at(u);
  const Mat ginv = g.ldlt().solve(Mat::Identity(n, n));

  std::vector<Mat> dg(n);  // dg[l](i,j) = d_l g_ij
  for (int l = 0; l < n; ++l) {
    Vec up = u, um = u;
    up(l) += h;
    um(l) -= h;
    dg[l] = (chart.g_at(up) - chart.g_at(um)) / (2.0 * h);
  }

  std::vector<Mat> gamma(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

double metric_compatibility_residual(const ChartMetric& chart, const Vec& u) {
  const int n = chart.dim;
  const double h = chart.diff.step;
  const auto gamma = christoffel(chart, u);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Vec up = u, um = u;
    up(k) += h;
    um(k) -= h;
    const Mat dgk = (chart.g_at(up) - chart.g_at(um)) / (2.0 * h);
    const Mat g = chart.g_at(u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = dgk(i, j);
        for (int m = 0; m < n; ++m) v -= gamma[m](k, i) * g(m, j) + gamma[m](k, j) * g(i, m);
        worst = std::max(worst, std::abs(v));
      }
  }
  return worst;
}

CurvatureTensor riemann_tensor_coord(const ChartMetric& chart, const Vec& u) {
  chart.require_interior(u);
  const int n = chart.dim;
  const double h = chart.diff.step;
  const Mat g = chart.g_at(u);
  const auto gamma = christoffel(chart, u);

  // dgamma[i][l](j,k) = d_i Gamma^l_{jk}
  std::vector<std::vector<Mat>> dgamma(n);
  for (int i = 0; i < n; ++i) {
    Vec up = u, um = u;
    up(i) += h;
    um(i) -= h;
    const auto gp = christoffel(chart, up);
    const auto gm = christoffel(chart, um);
    dgamma[i].reserve(n);
    for (int l = 0; l < n; ++l) dgamma[i].push_back((gp[l] - gm[l]) / (2.0 * h));
  }

  // R^l_{ijk} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
  CurvatureTensor R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double v = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int m = 0; m < n; ++m)
            v += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          // lowered on the fly below; stash R^l in the l slot for now
          R.at(i, j, k, l) = v;
        }
      }
  // lower the upper index: R_{ijkl} = g_{lm} R^m_{ijk}
  return CurvatureTensor::build(n, [&](int i, int j, int k, int l) {
    double v = 0.0;
    for (int m = 0; m < n; ++m) v += g(l, m) * R(i, j, k, m);
    return v;
  });
}

Mat orthonormal_frame(const ChartMetric& chart, const Vec& u, std::uint64_t seed) {
  const Mat g = chart.g_at(u);
  const int n = chart.dim;

  std::vector<Vec> candidates;
  if (seed != 0) {
    SeededRng rng(seed);
    for (int i = 0; i < n; ++i) candidates.push_back(rng.gaussian_vector(n));
    for (int i = 0; i < n; ++i) candidates.push_back(Vec::Unit(n, i));  // fallback
  }

  if (chart.has_J()) return orthonormal_adapted_frame(g, chart.J_at(u), candidates);

  // no J: plain Gram-Schmidt, skipping dependent candidates
  if (candidates.empty())
    for (int i = 0; i < n; ++i) candidates.push_back(Vec::Unit(n, i));
  std::vector<Vec> frame;
  for (const Vec& v : candidates) {
    if (static_cast<int>(frame.size()) == n) break;
    Vec w = project_out(g, v, frame);
    const double nn = norm(g, w);
    if (nn > 1e-10) frame.push_back(w / nn);
  }
  if (static_cast<int>(frame.size()) != n)
    throw degenerate_plane_error("orthonormal_frame: could not complete a frame");
  Mat E(n, n);
  for (int i = 0; i < n; ++i) E.col(i) = frame[i];
  return E;
}

CurvatureTensor riemann_tensor(const ChartMetric& chart, const Vec& u, std::uint64_t seed) {
  return riemann_tensor_coord(chart, u).change_basis(orthonormal_frame(chart, u, seed));
}

double nabla_J_residual(const ChartMetric& chart, const Vec& u) {
  if (!chart.has_J())
    throw chart_domain_error("nabla_J_residual: chart '" + chart.name + "' carries no J field");
  chart.require_interior(u);
  const int n = chart.dim;
  const double h = chart.diff.step;
  const auto gamma = christoffel(chart, u);
  const Mat J = chart.J_at(u);
  const Mat E = orthonormal_frame(chart, u, 0);
  const auto Esolver = E.fullPivLu();

  // (nabla_i J) = dJ_i + M_i J - J M_i with M_i(a,b) = Gamma^a_{ib}
  std::vector<Mat> covJ(n);
  for (int i = 0; i < n; ++i) {
    Vec up = u, um = u;
    up(i) += h;
    um(i) -= h;
    const Mat dJ = (chart.J_at(up) - chart.J_at(um)) / (2.0 * h);
    Mat M(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M(a, b) = gamma[a](i, b);
    covJ[i] = dJ + M * J - J * M;
  }

  double worst = 0.0;
  for (int alpha = 0; alpha < n; ++alpha) {
    Mat d = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) d += E(i, alpha) * covJ[i];
    worst = std::max(worst, max_abs(Mat(Esolver.solve(d * E))));
  }
  return worst;
}

FramedPoint hermitian_point_at(const ChartMetric& chart, const Vec& u, std::uint64_t seed) {
  chart.require_interior(u);
  const Mat E = orthonormal_frame(chart, u, seed);
  const Mat gf = E.transpose() * chart.g_at(u) * E;
  Mat Jf;
  if (chart.has_J())
    Jf = E.fullPivLu().solve(chart.J_at(u) * E);
  else
    Jf = standard_complex_structure(chart.dim);
  CurvatureTensor Rf = riemann_tensor_coord(chart, u).change_basis(E);
  return FramedPoint{u, E, HermitianPoint(gf, std::move(Jf), std::move(Rf))};
}

// ---------------------------------------------------------------------------
// catalog + JSON

ChartMetric ChartMetric::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("catalog JSON: ") + e.what());
  }
  try {
    ChartMetric c;
    c.name = j.at("name").get<std::string>();
    c.dim = j.at("dim").get<int>();
    if (c.dim < 1) throw parse_error("catalog JSON: dim must be positive");
    c.g_exprs = parse_expr_matrix(j.at("g"), c.dim, "g");
    if (j.contains("J")) c.J_exprs = parse_expr_matrix(j.at("J"), c.dim, "J");
    const auto& dom = j.at("domain");
    const auto lo = dom.at("lo").get<std::vector<double>>();
    const auto hi = dom.at("hi").get<std::vector<double>>();
    if (static_cast<int>(lo.size()) != c.dim || static_cast<int>(hi.size()) != c.dim)
      throw parse_error("catalog JSON: domain lo/hi must have dim entries");
    c.box_lo = Eigen::Map<const Vec>(lo.data(), c.dim);
    c.box_hi = Eigen::Map<const Vec>(hi.data(), c.dim);
    for (int i = 0; i < c.dim; ++i)
      if (!(c.box_lo(i) < c.box_hi(i))) throw parse_error("catalog JSON: empty domain box");
    if (j.contains("diff")) {
      const auto& d = j.at("diff");
      if (d.contains("step")) c.diff.step = d.at("step").get<double>();
      if (d.contains("outer_step")) c.diff.outer_step = d.at("outer_step").get<double>();
    }
    if (j.contains("expected")) {
      ExpectedModel e;
      e.kind = j.at("expected").at("kind").get<std::string>();
      e.c = j.at("expected").value("c", 0.0);
      c.expected = e;
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("catalog JSON: ") + e.what());
  }
}

ChartMetric ChartMetric::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open catalog file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ChartMetric::to_json_text() const {
  nlohmann::json j;
  j["name"] = name;
  j["dim"] = dim;
  auto dump_matrix = [](const std::vector<std::vector<Expr>>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& e : row) r.push_back(e.source());
      rows.push_back(r);
    }
    return rows;
  };
  j["g"] = dump_matrix(g_exprs);
  if (J_exprs) j["J"] = dump_matrix(*J_exprs);
  j["domain"]["lo"] = std::vector<double>(box_lo.data(), box_lo.data() + dim);
  j["domain"]["hi"] = std::vector<double>(box_hi.data(), box_hi.data() + dim);
  j["diff"]["step"] = diff.step;
  j["diff"]["outer_step"] = diff.outer_step;
  if (expected) {
    j["expected"]["kind"] = expected->kind;
    j["expected"]["c"] = expected->c;
  }
  return j.dump(2) + "\n";
}

namespace {

std::string rho_string(int dim) {
  std::string s;
  for (int i = 0; i < dim; ++i) {
    if (i) s += "+";
    s += "u" + std::to_string(i) + "*u" + std::to_string(i);
  }
  return s;
}

nlohmann::json const_matrix_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(fmt(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

nlohmann::json zero_matrix_json(int dim) {
  return const_matrix_json(Mat::Zero(dim, dim));
}

nlohmann::json domain_json(int dim, double half_width) {
  nlohmann::json d;
  d["lo"] = std::vector<double>(dim, -half_width);
  d["hi"] = std::vector<double>(dim, half_width);
  return d;
}

void require_even_dim(const std::string& name, int dim) {
  if (dim < 4 || dim % 2 != 0)
    throw std::invalid_argument("catalog: " + name + " needs an even dimension >= 4");
}

}  // namespace

ChartMetric catalog(const std::string& name, std::optional<double> c, int dim) {
  nlohmann::json j;
  j["name"] = name;

  if (name == "flat") {
    if (c) throw std::invalid_argument("catalog: flat takes no curvature parameter");
    require_even_dim(name, dim);
    j["dim"] = dim;
    j["g"] = const_matrix_json(Mat::Identity(dim, dim));
    j["J"] = const_matrix_json(standard_complex_structure(dim));
    j["domain"] = domain_json(dim, 2.0);
    j["expected"] = {{"kind", "real_space_form"}, {"c", 0.0}};
    return ChartMetric::from_json_text(j.dump());
  }

  if (name == "sphere" || name == "real_hyperbolic") {
    const bool spherical = name == "sphere";
    if (!c || (spherical && *c <= 0.0) || (!spherical && *c >= 0.0))
      throw std::invalid_argument("catalog: " + name + " needs c " +
                                  (spherical ? "> 0" : "< 0"));
    require_even_dim(name, dim);
    const std::string denom = spherical ? "(1+" + rho_string(dim) + ")^2"
                                        : "(1-(" + rho_string(dim) + "))^2";
    const std::string diag = fmt(4.0 / std::abs(*c)) + "/" + denom;
    nlohmann::json g = zero_matrix_json(dim);
    for (int i = 0; i < dim; ++i) g[i][i] = diag;
    j["dim"] = dim;
    j["g"] = g;
    j["domain"] = domain_json(dim, spherical ? 0.9 : 0.4);
    j["expected"] = {{"kind", "real_space_form"}, {"c", *c}};
    return ChartMetric::from_json_text(j.dump());
  }

  if (name == "fubini_study" || name == "complex_hyperbolic") {
    const bool fs = name == "fubini_study";
    if (!c || (fs && *c <= 0.0) || (!fs && *c >= 0.0))
      throw std::invalid_argument("catalog: " + name + " needs c " + (fs ? "> 0" : "< 0"));
    if (dim != 4)
      throw std::invalid_argument("catalog: " + name + " is provided for dim 4 (m = 2)");
    const std::string K = fmt(4.0 / std::abs(*c));
    const std::string D2 = fs ? "(1+" + rho_string(4) + ")^2" : "(1-(" + rho_string(4) + "))^2";
    const std::string s1 = fs ? "+" : "-";   // sign of |z_other|^2 in the diagonal
    const std::string off = fs ? "-" : "";   // prefix of the off-diagonal entries
    const std::string offn = fs ? "" : "-";  // prefix of g12 = -g03
    auto entry = [&](const std::string& numer) { return K + "*(" + numer + ")/" + D2; };
    const std::string d01 = entry(std::string("1") + s1 + "u2*u2" + s1 + "u3*u3");
    const std::string d23 = entry(std::string("1") + s1 + "u0*u0" + s1 + "u1*u1");
    const std::string a = off + entry("u0*u2+u1*u3");    // g02 = g20 = g13 = g31
    const std::string b = off + entry("u0*u3-u1*u2");    // g03 = g30
    const std::string bneg = offn + entry("u0*u3-u1*u2");  // g12 = g21
    nlohmann::json g = zero_matrix_json(4);
    g[0][0] = d01; g[1][1] = d01; g[2][2] = d23; g[3][3] = d23;
    g[0][2] = a;   g[2][0] = a;   g[1][3] = a;   g[3][1] = a;
    g[0][3] = b;   g[3][0] = b;   g[1][2] = bneg; g[2][1] = bneg;
    j["dim"] = 4;
    j["g"] = g;
    j["J"] = const_matrix_json(standard_complex_structure(4));
    j["domain"] = domain_json(4, fs ? 0.9 : 0.35);
    j["expected"] = {{"kind", "complex_space_form"}, {"c", *c}};
    return ChartMetric::from_json_text(j.dump());
  }

  if (name == "product_s2xs2") {
    if (c) throw std::invalid_argument("catalog: product_s2xs2 takes no curvature parameter");
    if (dim != 4) throw std::invalid_argument("catalog: product_s2xs2 has dim 4");
    nlohmann::json g = zero_matrix_json(4);
    g[0][0] = "4/(1+u0*u0+u1*u1)^2";
    g[1][1] = "4/(1+u0*u0+u1*u1)^2";
    g[2][2] = "4/(1+u2*u2+u3*u3)^2";
    g[3][3] = "4/(1+u2*u2+u3*u3)^2";
    j["dim"] = 4;
    j["g"] = g;
    j["J"] = const_matrix_json(standard_complex_structure(4));
    j["domain"] = domain_json(4, 0.9);
    j["expected"] = {{"kind", "none"}, {"c", 0.0}};
    return ChartMetric::from_json_text(j.dump());
  }

  if (name == "non_kahler_flat_J") {
    if (c) throw std::invalid_argument("catalog: non_kahler_flat_J takes no curvature parameter");
    if (dim != 4) throw std::invalid_argument("catalog: non_kahler_flat_J has dim 4");
    j["dim"] = 4;
    j["g"] = const_matrix_json(Mat::Identity(4, 4));
    // J(u) = Q(u0) J0 Q(u0)^T, Q the rotation in the (e0, e2) plane: the flat
    // metric stays Kaehler-flatly compatible with J(u) pointwise, but
    // nabla J has max-abs component max(|sin u0|, |cos u0|) >= 1/sqrt(2);
    // at the origin the residual is exactly 1.
    j["J"] = nlohmann::json::array({
        nlohmann::json::array({"0", "-cos(u0)", "0", "sin(u0)"}),
        nlohmann::json::array({"cos(u0)", "0", "sin(u0)", "0"}),
        nlohmann::json::array({"0", "-sin(u0)", "0", "-cos(u0)"}),
        nlohmann::json::array({"-sin(u0)", "0", "cos(u0)", "0"}),
    });
    j["domain"] = domain_json(4, 1.0);
    j["expected"] = {{"kind", "real_space_form"}, {"c", 0.0}};
    return ChartMetric::from_json_text(j.dump());
  }

  throw std::invalid_argument("catalog: unknown space '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"flat",          "sphere",         "real_hyperbolic", "fubini_study",
          "complex_hyperbolic", "product_s2xs2", "non_kahler_flat_J"};
}

}  // namespace ahlab
