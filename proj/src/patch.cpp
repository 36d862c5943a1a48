#include "ahlab/patch.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ahlab {

NormalField NormalField::constant(const Vec& xi) {
  NormalField f;
  f.components.reserve(xi.size());
  for (int i = 0; i < xi.size(); ++i) f.components.push_back(Expr::constant(xi(i)));
  return f;
}

Vec NormalField::eval(const Vec& v) const {
  Vec out(static_cast<int>(components.size()));
  for (int i = 0; i < out.size(); ++i) out(i) = components[i].eval(v);
  return out;
}

Vec ImmersedPatch::map_point(const Vec& v) const {
  Vec p(ambient.dim);
  for (int k = 0; k < ambient.dim; ++k) p(k) = immersion[k].eval(v);
  return p;
}

Mat ImmersedPatch::pushforward(const Vec& v) const {
  const double h = diff.step;
  Mat F(ambient.dim, n);
  for (int i = 0; i < n; ++i) {
    Vec vp = v, vm = v;
    vp(i) += h;
    vm(i) -= h;
    F.col(i) = (map_point(vp) - map_point(vm)) / (2.0 * h);
  }
  return F;
}

bool ImmersedPatch::in_domain(const Vec& v, double margin) const {
  if (v.size() != n) return false;
  for (int i = 0; i < n; ++i)
    if (v(i) < box_lo(i) + margin || v(i) > box_hi(i) - margin) return false;
  return true;
}

void ImmersedPatch::require_interior(const Vec& v) const {
  // outer_step differencing along frame directions reaches the farthest; the
  // parameter coefficients of a unit tangent vector can exceed 1
  const double margin = 5.0 * diff.outer_step + 3.0 * diff.step;
  if (!in_domain(v, margin))
    throw chart_domain_error("patch '" + name +
                             "': parameter point too close to the box boundary");
}

Vec ImmersedPatch::sample_interior_point(SeededRng& rng) const {
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    const double w = box_hi(i) - box_lo(i);
    v(i) = box_lo(i) + w * (0.2 + 0.6 * rng.uniform());
  }
  return v;
}

namespace {

// All pointwise machinery at one parameter point; built once per query.
struct Local {
  const ImmersedPatch& patch;
  Vec v;
  Vec p;                  // f(v)
  Mat g;                  // ambient metric at p
  Mat F;                  // pushforward
  std::vector<Mat> hess;  // per ambient coordinate k: n x n parameter Hessian
  Mat tan, nor;           // orthonormal frames
  std::vector<Mat> gamma; // ambient Christoffels at p

  explicit Local(const ImmersedPatch& pa, const Vec& vv) : patch(pa), v(vv) {
    p = patch.map_point(v);
    g = patch.ambient.g_at(p);
    F = patch.pushforward(v);

    Eigen::JacobiSVD<Mat> svd(F);
    if (svd.singularValues().minCoeff() <= 1e-8)
      throw chart_domain_error("patch '" + patch.name + "': rank-deficient immersion point");

    const int dim = patch.ambient.dim;
    const int n = patch.n;
    const double h = patch.diff.step;

    // symmetric 4-point stencil: exactly symmetric in (i, j)
    hess.assign(dim, Mat::Zero(n, n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        Vec vpp = v, vpm = v, vmp = v, vmm = v;
        vpp(i) += h; vpp(j) += h;
        vpm(i) += h; vpm(j) -= h;
        vmp(i) -= h; vmp(j) += h;
        vmm(i) -= h; vmm(j) -= h;
        const Vec s =
            (patch.map_point(vpp) - patch.map_point(vpm) - patch.map_point(vmp) +
             patch.map_point(vmm)) /
            (4.0 * h * h);
        for (int k = 0; k < dim; ++k) {
          hess[k](i, j) = s(k);
          hess[k](j, i) = s(k);
        }
      }

    // frames: Gram-Schmidt the pushforward columns, then complete to a
    // normal frame from the coordinate basis
    std::vector<Vec> tcols;
    for (int i = 0; i < n; ++i) tcols.push_back(F.col(i));
    const auto tframe = gram_schmidt(g, tcols);
    tan = Mat(dim, n);
    for (int i = 0; i < n; ++i) tan.col(i) = tframe[i];

    std::vector<Vec> all = tframe;
    nor = Mat(dim, dim - n);
    int filled = 0;
    for (int i = 0; i < dim && filled < dim - n; ++i) {
      Vec w = project_out(g, Vec(Vec::Unit(dim, i)), all);
      const double nn = norm(g, w);
      if (nn > 1e-10) {
        w /= nn;
        all.push_back(w);
        nor.col(filled++) = w;
      }
    }
    if (filled != dim - n)
      throw chart_domain_error("patch '" + patch.name + "': could not complete a normal frame");

    gamma = christoffel(patch.ambient, p);
  }

  // Gamma~(X, W) ambient contraction
  Vec gamma_term(const Vec& X, const Vec& W) const {
    const int dim = patch.ambient.dim;
    Vec out = Vec::Zero(dim);
    for (int k = 0; k < dim; ++k) {
      double s = 0.0;
      for (int pq = 0; pq < dim; ++pq) {
        double row = 0.0;
        for (int q = 0; q < dim; ++q) row += gamma[k](pq, q) * W(q);
        s += X(pq) * row;
      }
      out(k) = s;
    }
    return out;
  }

  // nabla~_{Fa}(F b) in ambient coordinates (canonical constant-coefficient
  // extensions of the parameter directions)
  Vec cov2(const Vec& a, const Vec& b) const {
    const int dim = patch.ambient.dim;
    Vec out(dim);
    for (int k = 0; k < dim; ++k) out(k) = a.dot(hess[k] * b);
    return out + gamma_term(F * a, F * b);
  }

  Vec tangential(const Vec& w) const {
    Vec out = Vec::Zero(w.size());
    for (int i = 0; i < tan.cols(); ++i) out += inner(g, w, tan.col(i)) * tan.col(i);
    return out;
  }

  Vec normal_part(const Vec& w) const {
    Vec out = Vec::Zero(w.size());
    for (int i = 0; i < nor.cols(); ++i) out += inner(g, w, nor.col(i)) * nor.col(i);
    return out;
  }

  // parameter coefficients a with F a = X (X must be tangent)
  Vec param_coeff(const Vec& X, double tol = 1e-8) const {
    const Mat gram = F.transpose() * g * F;
    const Vec a = gram.ldlt().solve(F.transpose() * (g * X));
    if ((F * a - X).cwiseAbs().maxCoeff() > tol)
      throw admissibility_error("patch '" + patch.name + "': vector is not tangent");
    return a;
  }

  // sigma on parameter coefficient pairs
  Vec sigma(const Vec& a, const Vec& b) const { return normal_part(cov2(a, b)); }

  PatchFrames frames() const { return PatchFrames{p, g, tan, nor}; }
};

}  // namespace

PatchFrames patch_frames(const ImmersedPatch& patch, const Vec& v) {
  patch.require_interior(v);
  return Local(patch, v).frames();
}

const Vec& SecondFundamentalForm::value(int i, int j) const {
  return values[static_cast<std::size_t>(i) * frames.tangent.cols() + j];
}

double SecondFundamentalForm::symmetry_residual() const {
  const int n = static_cast<int>(frames.tangent.cols());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, (value(i, j) - value(j, i)).cwiseAbs().maxCoeff());
  return worst;
}

double SecondFundamentalForm::normality_residual() const {
  const int n = static_cast<int>(frames.tangent.cols());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < n; ++t)
        worst = std::max(worst, std::abs(inner(frames.g, value(i, j), frames.tangent.col(t))));
  return worst;
}

SecondFundamentalForm second_fundamental_form(const ImmersedPatch& patch, const Vec& v) {
  patch.require_interior(v);
  const Local loc(patch, v);
  const int n = patch.n;
  SecondFundamentalForm out;
  out.frames = loc.frames();
  out.values.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const Vec ai = loc.param_coeff(loc.tan.col(i));
    for (int j = 0; j < n; ++j) {
      const Vec aj = loc.param_coeff(loc.tan.col(j));
      out.values.push_back(loc.sigma(ai, aj));
    }
  }
  return out;
}

Vec mean_curvature(const ImmersedPatch& patch, const Vec& v) {
  const SecondFundamentalForm sff = second_fundamental_form(patch, v);
  Vec H = Vec::Zero(patch.ambient.dim);
  for (int i = 0; i < patch.n; ++i) H += sff.value(i, i);
  return H / static_cast<double>(patch.n);
}

double umbilic_residual(const ImmersedPatch& patch, const Vec& v) {
  const SecondFundamentalForm sff = second_fundamental_form(patch, v);
  Vec H = Vec::Zero(patch.ambient.dim);
  for (int i = 0; i < patch.n; ++i) H += sff.value(i, i);
  H /= static_cast<double>(patch.n);
  double worst = 0.0;
  for (int i = 0; i < patch.n; ++i)
    for (int j = 0; j < patch.n; ++j) {
      const Vec d = sff.value(i, j) - (i == j ? 1.0 : 0.0) * H;
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  return worst;
}

double WeingartenSplit::reconstruction_residual() const {
  const int n = static_cast<int>(frames.tangent.cols());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec rebuilt = normal_derivative[i];
    for (int t = 0; t < n; ++t) rebuilt -= shape_operator(t, i) * frames.tangent.col(t);
    worst = std::max(worst, (rebuilt - ambient_derivative[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

WeingartenSplit weingarten_split(const ImmersedPatch& patch, const Vec& v,
                                 const NormalField& xi) {
  patch.require_interior(v);
  const Local loc(patch, v);
  const int n = patch.n;
  const double h = patch.diff.step;

  const Vec xi0 = xi.eval(v);
  for (int t = 0; t < n; ++t)
    if (std::abs(inner(loc.g, xi0, loc.tan.col(t))) > 1e-8)
      throw admissibility_error("weingarten_split: xi is not normal to the patch");

  WeingartenSplit out;
  out.frames = loc.frames();
  out.shape_operator = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec ai = loc.param_coeff(loc.tan.col(i));
    Vec vp = v - h * ai, vq = v + h * ai;
    const Vec dxi = (xi.eval(vq) - xi.eval(vp)) / (2.0 * h);
    const Vec total = dxi + loc.gamma_term(loc.tan.col(i), xi0);  // nabla~_{E_i} xi
    out.ambient_derivative.push_back(total);
    out.normal_derivative.push_back(loc.normal_part(total));
    for (int t = 0; t < n; ++t)
      out.shape_operator(t, i) = -inner(loc.g, total, loc.tan.col(t));  // -A = tangential part
  }
  return out;
}

double parallel_normal_residual(const ImmersedPatch& patch, const Vec& v,
                                const NormalField& xi) {
  const WeingartenSplit split = weingarten_split(patch, v, xi);
  double worst = 0.0;
  for (const Vec& d : split.normal_derivative)
    worst = std::max(worst, norm(split.frames.g, d));
  return worst;
}

double mean_curvature_parallel_residual(const ImmersedPatch& patch, const Vec& v) {
  patch.require_interior(v);
  const Local loc(patch, v);
  const double H = patch.diff.outer_step;
  const Vec h0 = mean_curvature(patch, v);
  double worst = 0.0;
  for (int i = 0; i < patch.n; ++i) {
    const Vec ai = loc.param_coeff(loc.tan.col(i));
    const Vec dh = (mean_curvature(patch, Vec(v + H * ai)) -
                    mean_curvature(patch, Vec(v - H * ai))) /
                   (2.0 * H);
    const Vec total = dh + loc.gamma_term(loc.tan.col(i), h0);
    worst = std::max(worst, norm(loc.g, loc.normal_part(total)));
  }
  return worst;
}

Vec ambient_curvature_normal_component(const ImmersedPatch& patch, const Vec& v, const Vec& X,
                                       const Vec& Y, const Vec& Z) {
  patch.require_interior(v);
  const Local loc(patch, v);
  loc.param_coeff(X);
  loc.param_coeff(Y);
  loc.param_coeff(Z);
  const CurvatureTensor R = riemann_tensor_coord(patch.ambient, loc.p);
  const int dim = patch.ambient.dim;
  Vec lowered(dim);
  for (int l = 0; l < dim; ++l) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) s += R(i, j, k, l) * X(i) * Y(j) * Z(k);
    lowered(l) = s;
  }
  return loc.normal_part(loc.g.ldlt().solve(lowered));
}

Vec codazzi_residual(const ImmersedPatch& patch, const Vec& v, const Vec& X, const Vec& Y,
                     const Vec& Z) {
  patch.require_interior(v);
  const Local loc(patch, v);
  const Vec a = loc.param_coeff(X);
  const Vec b = loc.param_coeff(Y);
  const Vec c = loc.param_coeff(Z);

  // left side: normal component of R(X,Y)Z in the ambient chart
  const Vec lhs = ambient_curvature_normal_component(patch, v, X, Y, Z);

  // (nabla-bar_X sigma)(Y, Z) with constant-coefficient extensions
  const double H = patch.diff.outer_step;
  auto nabla_bar_sigma = [&](const Vec& ax, const Vec& ay, const Vec& az) {
    Vec vp = v + H * ax, vm = v - H * ax;
    const Local lp(patch, vp), lm(patch, vm);
    const Vec dsigma = (lp.sigma(ay, az) - lm.sigma(ay, az)) / (2.0 * H);
    const Vec sig0 = loc.sigma(ay, az);
    const Vec D = loc.normal_part(dsigma + loc.gamma_term(loc.F * ax, sig0));
    const Vec nxy = loc.param_coeff(loc.tangential(loc.cov2(ax, ay)), 1e-6);
    const Vec nxz = loc.param_coeff(loc.tangential(loc.cov2(ax, az)), 1e-6);
    return Vec(D - loc.sigma(nxy, az) - loc.sigma(ay, nxz));
  };

  return lhs - (nabla_bar_sigma(a, b, c) - nabla_bar_sigma(b, a, c));
}

// ---------------------------------------------------------------------------
// JSON + catalog

ImmersedPatch ImmersedPatch::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("patch JSON: ") + e.what());
  }
  try {
    ImmersedPatch p;
    p.name = j.at("name").get<std::string>();
    p.ambient = ChartMetric::from_json_text(j.at("ambient").dump());
    p.n = j.at("n").get<int>();
    if (p.n < 1 || p.n >= p.ambient.dim)
      throw parse_error("patch JSON: need 1 <= n < ambient dim");
    for (const auto& e : j.at("immersion")) p.immersion.push_back(Expr::parse(e.get<std::string>()));
    if (static_cast<int>(p.immersion.size()) != p.ambient.dim)
      throw parse_error("patch JSON: immersion needs one expression per ambient coordinate");
    const auto lo = j.at("domain").at("lo").get<std::vector<double>>();
    const auto hi = j.at("domain").at("hi").get<std::vector<double>>();
    if (static_cast<int>(lo.size()) != p.n || static_cast<int>(hi.size()) != p.n)
      throw parse_error("patch JSON: domain lo/hi must have n entries");
    p.box_lo = Eigen::Map<const Vec>(lo.data(), p.n);
    p.box_hi = Eigen::Map<const Vec>(hi.data(), p.n);
    if (j.contains("diff")) {
      const auto& d = j.at("diff");
      if (d.contains("step")) p.diff.step = d.at("step").get<double>();
      if (d.contains("outer_step")) p.diff.outer_step = d.at("outer_step").get<double>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("patch JSON: ") + e.what());
  }
}

ImmersedPatch ImmersedPatch::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open patch file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ImmersedPatch::to_json_text() const {
  nlohmann::json j;
  j["name"] = name;
  j["ambient"] = nlohmann::json::parse(ambient.to_json_text());
  j["n"] = n;
  nlohmann::json f = nlohmann::json::array();
  for (const auto& e : immersion) f.push_back(e.source());
  j["immersion"] = f;
  j["domain"]["lo"] = std::vector<double>(box_lo.data(), box_lo.data() + n);
  j["domain"]["hi"] = std::vector<double>(box_hi.data(), box_hi.data() + n);
  j["diff"]["step"] = diff.step;
  j["diff"]["outer_step"] = diff.outer_step;
  return j.dump(2) + "\n";
}

namespace {

std::string fmt_r(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ImmersedPatch build_patch(const std::string& name, const ChartMetric& ambient,
                          std::vector<std::string> immersion, std::vector<double> lo,
                          std::vector<double> hi) {
  nlohmann::json j;
  j["name"] = name;
  j["ambient"] = nlohmann::json::parse(ambient.to_json_text());
  j["n"] = static_cast<int>(lo.size());
  j["immersion"] = immersion;
  j["domain"]["lo"] = lo;
  j["domain"]["hi"] = hi;
  return ImmersedPatch::from_json_text(j.dump());
}

}  // namespace

ImmersedPatch patch_catalog(const std::string& name, std::optional<double> r) {
  if (name == "affine_plane_flat") {
    if (r) throw std::invalid_argument("patch_catalog: affine_plane_flat takes no radius");
    return build_patch(name, catalog("flat"), {"u0", "u1", "0.3", "-0.2"}, {-1.0, -1.0},
                       {1.0, 1.0});
  }
  if (name == "circle_flat") {
    const double rr = r.value_or(0.5);
    if (rr <= 0.0) throw std::invalid_argument("patch_catalog: circle_flat needs r > 0");
    const std::string R = fmt_r(rr);
    return build_patch(name, catalog("flat"),
                       {R + "*cos(u0)", R + "*sin(u0)", "0.3", "-0.2"}, {-3.2}, {3.2});
  }
  if (name == "round_sphere_flat") {
    const double rr = r.value_or(0.5);
    if (rr <= 0.0) throw std::invalid_argument("patch_catalog: round_sphere_flat needs r > 0");
    const std::string R = fmt_r(rr);
    return build_patch(name, catalog("flat"),
                       {R + "*sin(u0)*cos(u1)", R + "*sin(u0)*sin(u1)", R + "*cos(u0)", "0.1"},
                       {0.4, -3.1}, {2.7, 3.1});
  }
  if (name == "cylinder_flat") {
    const double rr = r.value_or(1.0);
    if (rr <= 0.0) throw std::invalid_argument("patch_catalog: cylinder_flat needs r > 0");
    const std::string R = fmt_r(rr);
    return build_patch(name, catalog("flat"), {R + "*cos(u1)", R + "*sin(u1)", "u0", "-0.3"},
                       {-1.0, -3.1}, {1.0, 3.1});
  }
  if (name == "great_sphere_in_sphere1") {
    if (r) throw std::invalid_argument("patch_catalog: great_sphere_in_sphere1 takes no radius");
    return build_patch(name, catalog("sphere", 1.0), {"u0", "u1", "0", "0"}, {-0.8, -0.8},
                       {0.8, 0.8});
  }
  if (name == "small_sphere_in_sphere1") {
    // chart-coordinate sphere off the origin: totally umbilical with parallel
    // mean curvature in the round metric (stereographic charts are conformal
    // and umbilicity is a conformal invariant)
    const double rr = r.value_or(0.3);
    if (rr <= 0.0 || rr > 0.4)
      throw std::invalid_argument("patch_catalog: small_sphere_in_sphere1 needs 0 < r <= 0.4");
    const std::string R = fmt_r(rr);
    return build_patch(name, catalog("sphere", 1.0),
                       {"0.2+" + R + "*sin(u0)*cos(u1)", R + "*sin(u0)*sin(u1)",
                        R + "*cos(u0)", "0.1"},
                       {0.4, -3.1}, {2.7, 3.1});
  }
  if (name == "slanted_plane_fs") {
    if (r) throw std::invalid_argument("patch_catalog: slanted_plane_fs takes no radius");
    return build_patch(name, catalog("fubini_study", 4.0), {"u0", "0.3*u1", "u1", "0"},
                       {-0.8, -0.8}, {0.8, 0.8});
  }
  throw std::invalid_argument("patch_catalog: unknown patch '" + name + "'");
}

std::vector<std::string> patch_catalog_names() {
  return {"affine_plane_flat",       "circle_flat",
          "round_sphere_flat",       "cylinder_flat",
          "great_sphere_in_sphere1", "small_sphere_in_sphere1",
          "slanted_plane_fs"};
}

}  // namespace ahlab
