#include "orbitkit/liecore.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "families.hpp"

namespace orbitkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedAlgebras: return "MixedAlgebras";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::ZeroNilpositive: return "ZeroNilpositive";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::MixedFamilies: return "MixedFamilies";
    case ErrorCode::SpectrumViolation: return "SpectrumViolation";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonpositiveT: return "NonpositiveT";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::NotOnIntersection: return "NotOnIntersection";
    case ErrorCode::TransversalityFailure: return "TransversalityFailure";
    case ErrorCode::NoncompactOrbit: return "NoncompactOrbit";
    case ErrorCode::NonRegularInput: return "NonRegularInput";
    case ErrorCode::MixedDimensions: return "MixedDimensions";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::UnsupportedOrbit: return "UnsupportedOrbit";
    case ErrorCode::TailBoundViolation: return "TailBoundViolation";
    case ErrorCode::NotRegular: return "NotRegular";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

int to_int(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidSpec, "bad integer '" + std::string(s) + "' in " + std::string(context));
  return v;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

AlgebraSpec parse_group(std::string_view raw) {
  const std::string name = strip(raw);
  const auto open = name.find('(');
  if (open == std::string::npos || name.back() != ')')
    throw Error(ErrorCode::UnsupportedFamily, "cannot parse group '" + name + "'");
  std::string head = name.substr(0, open);
  std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::vector<std::string> args;
  std::stringstream ss(inner);
  for (std::string a; std::getline(ss, a, ',');) args.push_back(a);

  AlgebraSpec spec;
  auto field = [&](size_t i) { return args.size() > i ? args[i] : std::string(); };
  if (head == "sl" || head == "gl") {
    if (args.size() != 2 || field(1) != "R")
      throw Error(ErrorCode::UnsupportedFamily, "only real forms " + head + "(n,R) are supported");
    spec.family = head == "sl" ? Family::SlR : Family::GlR;
    spec.n = to_int(field(0), name);
  } else if (head == "su" || head == "u") {
    spec.family = head == "su" ? Family::SuPQ : Family::UPQ;
    if (args.size() == 1) {
      spec.p = to_int(field(0), name);
      spec.q = 0;
    } else if (args.size() == 2) {
      spec.p = to_int(field(0), name);
      spec.q = to_int(field(1), name);
    } else {
      throw Error(ErrorCode::UnsupportedFamily, name);
    }
    spec.n = spec.p + spec.q;
  } else if (head == "sp") {
    if (args.size() != 2) throw Error(ErrorCode::UnsupportedFamily, name);
    const int m = to_int(field(0), name);
    if (m % 2 != 0 || m <= 0) throw Error(ErrorCode::UnsupportedFamily, "sp needs an even size: " + name);
    spec.n = m / 2;
    if (field(1) == "R") spec.family = Family::SpR;
    else if (field(1) == "C") spec.family = Family::SpC;
    else throw Error(ErrorCode::UnsupportedFamily, name);
  } else {
    throw Error(ErrorCode::UnsupportedFamily, "unknown family '" + head + "'");
  }
  if (spec.n < 1 || spec.p < 0 || spec.q < 0)
    throw Error(ErrorCode::UnsupportedFamily, "bad size in '" + name + "'");
  if ((spec.family == Family::SlR) && spec.n < 2)
    throw Error(ErrorCode::UnsupportedFamily, "sl(1,R) is zero");
  if (spec.family == Family::SuPQ && spec.n < 2)
    throw Error(ErrorCode::UnsupportedFamily, "su(1) is zero");
  return spec;
}

std::string group_name(const AlgebraSpec& spec) {
  switch (spec.family) {
    case Family::SlR: return "sl(" + std::to_string(spec.n) + ",R)";
    case Family::GlR: return "gl(" + std::to_string(spec.n) + ",R)";
    case Family::SuPQ:
      return spec.q == 0 ? "su(" + std::to_string(spec.p) + ")"
                         : "su(" + std::to_string(spec.p) + "," + std::to_string(spec.q) + ")";
    case Family::UPQ:
      return spec.q == 0 ? "u(" + std::to_string(spec.p) + ")"
                         : "u(" + std::to_string(spec.p) + "," + std::to_string(spec.q) + ")";
    case Family::SpR: return "sp(" + std::to_string(2 * spec.n) + ",R)";
    case Family::SpC: return "sp(" + std::to_string(2 * spec.n) + ",C)";
  }
  return "?";
}

AlgebraSpec parse_algebra_spec(std::string_view text) {
  std::string family;
  std::string group;
  int n = -1, p = -1, q = -1;
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "family") family = value;
    else if (key == "group") group = value;
    else if (key == "n") n = to_int(value, "n");
    else if (key == "p") p = to_int(value, "p");
    else if (key == "q") q = to_int(value, "q");
    else if (key == "basis") {
      std::istringstream vs(value);
      std::vector<double> entries;
      for (double v; vs >> v;) entries.push_back(v);
      if (!vs.eof()) throw Error(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": bad number");
      rows.push_back(std::move(entries));
    } else {
      throw Error(ErrorCode::InvalidSpec, "unknown key '" + key + "'");
    }
  }

  AlgebraSpec spec;
  if (!group.empty()) {
    spec = parse_group(group);
  } else {
    if (family.empty()) throw Error(ErrorCode::InvalidSpec, "missing family or group");
    if (family == "sl" || family == "gl") {
      if (n < 1) throw Error(ErrorCode::InvalidSpec, "missing n");
      spec = parse_group(family + "(" + std::to_string(n) + ",R)");
    } else if (family == "u" || family == "su") {
      if (p < 0) {
        if (n < 1) throw Error(ErrorCode::InvalidSpec, "missing n or (p,q)");
        p = n;
        q = 0;
      }
      spec = parse_group(family + "(" + std::to_string(p) + "," + std::to_string(std::max(q, 0)) + ")");
    } else if (family == "sp_real" || family == "sp_complex") {
      if (n < 2) throw Error(ErrorCode::InvalidSpec, "missing n (matrix size)");
      spec = parse_group("sp(" + std::to_string(n) + (family == "sp_real" ? ",R)" : ",C)"));
    } else {
      throw Error(ErrorCode::UnsupportedFamily, "unknown family '" + family + "'");
    }
  }

  if (!rows.empty()) {
    const int size = (spec.family == Family::SpR || spec.family == Family::SpC) ? 2 * spec.n
                     : (spec.family == Family::UPQ || spec.family == Family::SuPQ) ? spec.p + spec.q
                                                                                   : spec.n;
    const size_t nn = static_cast<size_t>(size) * size;
    for (const auto& r : rows) {
      MatrixXcd m(size, size);
      if (r.size() == nn) {
        for (int i = 0; i < size; ++i)
          for (int j = 0; j < size; ++j) m(i, j) = r[i * size + j];
      } else if (r.size() == 2 * nn) {
        for (int i = 0; i < size; ++i)
          for (int j = 0; j < size; ++j) m(i, j) = {r[2 * (i * size + j)], r[2 * (i * size + j) + 1]};
      } else {
        throw Error(ErrorCode::InvalidSpec, "basis row has " + std::to_string(r.size()) + " entries, expected " +
                                                std::to_string(nn) + " or " + std::to_string(2 * nn));
      }
      spec.basis_override.push_back(m);
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// MatrixLieAlgebra
// ---------------------------------------------------------------------------

MatrixLieAlgebra::MatrixLieAlgebra(AlgebraSpec spec) : spec_(std::move(spec)) {
  auto data = detail::build_family(spec_);
  name_ = group_name(spec_);
  size_ = data.size;
  complex_ = data.complex;
  form_kind_ = data.form_kind;
  form_ = data.form;
  if (form_kind_ == FormKind::Hermitian) hform_ = form_;
  else if (form_kind_ == FormKind::Symplectic) hform_ = std::complex<double>(0.0, 1.0) * form_;

  // The family basis defines the algebra; an override must span the same space.
  vec_basis_.resize(2 * size_ * size_, static_cast<Eigen::Index>(data.basis.size()));
  for (size_t k = 0; k < data.basis.size(); ++k) vec_basis_.col(k) = vectorize(data.basis[k]);
  if (!spec_.basis_override.empty()) {
    const MatrixXd family_span = column_space(vec_basis_);
    MatrixXd ov(2 * size_ * size_, static_cast<Eigen::Index>(spec_.basis_override.size()));
    for (size_t k = 0; k < spec_.basis_override.size(); ++k) {
      if (spec_.basis_override[k].rows() != size_ || spec_.basis_override[k].cols() != size_)
        throw Error(ErrorCode::InvalidSpec, "basis override has wrong matrix size");
      ov.col(k) = vectorize(spec_.basis_override[k]);
    }
    if (ov.cols() != family_span.cols() || numerical_rank(ov) != ov.cols())
      throw Error(ErrorCode::InvalidSpec, "basis override is not a basis of " + name_);
    const double off = (ov - family_span * (family_span.transpose() * ov)).norm() / std::max(1.0, ov.norm());
    if (off > 1e-10) throw Error(ErrorCode::NotInAlgebra, "basis override leaves " + name_);
    data.basis = spec_.basis_override;
    vec_basis_ = ov;
  }
  basis_ = std::move(data.basis);
  if (numerical_rank(vec_basis_) != dim())
    throw Error(ErrorCode::InvalidSpec, "basis matrices are linearly dependent");
  pinv_ = vec_basis_.completeOrthogonalDecomposition().pseudoInverse();

  const Eigen::Index d = dim();
  gram_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) gram_(i, j) = (basis_[i] * basis_[j]).trace().real();

  ad_basis_.assign(d, MatrixXd(d, d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const MatrixXcd c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      if (projection_residual(c) > 1e-10)
        throw Error(ErrorCode::NotInAlgebra, "basis of " + name_ + " is not closed under the bracket");
      ad_basis_[i].col(j) = pinv_ * vectorize(c);
    }
  }

  MatrixXd stacked(d * d, d);
  for (Eigen::Index i = 0; i < d; ++i) stacked.middleRows(i * d, d) = ad_basis_[i];
  center_ = null_space(stacked);

  std::mt19937 rng(20110821u);
  std::normal_distribution<double> normal(0.0, 1.0);
  rank_ = static_cast<int>(d);
  for (int trial = 0; trial < 4; ++trial) {
    VectorXd x(d);
    for (Eigen::Index i = 0; i < d; ++i) x(i) = normal(rng);
    rank_ = std::min<int>(rank_, static_cast<int>(d - numerical_rank(ad(x))));
  }
  validate();
}

void MatrixLieAlgebra::validate() const {
  const Eigen::Index d = dim();
  if (std::abs(gram_.determinant()) <= 1e-10)
    throw Error(ErrorCode::InvalidSpec, "trace form is degenerate on " + name_);
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::InvalidSpec, "trace form is not symmetric");
  // <[x,y],z> + <y,[x,z]> = 0, i.e. ad(b_i)^T K + K ad(b_i) = 0.
  for (Eigen::Index i = 0; i < d; ++i) {
    const double r = (ad_basis_[i].transpose() * gram_ + gram_ * ad_basis_[i]).cwiseAbs().maxCoeff();
    if (r > 1e-10) throw Error(ErrorCode::InvalidSpec, "trace form is not invariant");
  }
}

Eigen::VectorXd MatrixLieAlgebra::vectorize(const MatrixXcd& m) const {
  const Eigen::Index nn = static_cast<Eigen::Index>(size_) * size_;
  VectorXd v(2 * nn);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      v(i * size_ + j) = m(i, j).real();
      v(nn + i * size_ + j) = m(i, j).imag();
    }
  }
  return v;
}

MatrixXcd MatrixLieAlgebra::matrix(const VectorXd& coords) const {
  MatrixXcd m = MatrixXcd::Zero(size_, size_);
  for (Eigen::Index k = 0; k < dim(); ++k)
    if (coords(k) != 0.0) m += coords(k) * basis_[k];
  return m;
}

double MatrixLieAlgebra::projection_residual(const MatrixXcd& m) const {
  const VectorXd v = vectorize(m);
  const VectorXd back = vec_basis_ * (pinv_ * v);
  return (back - v).norm() / std::max(1.0, v.norm());
}

VectorXd MatrixLieAlgebra::coords(const MatrixXcd& m) const {
  if (m.rows() != size_ || m.cols() != size_)
    throw Error(ErrorCode::NotInAlgebra, "matrix has the wrong size for " + name_);
  const VectorXd v = vectorize(m);
  VectorXd c = pinv_ * v;
  const double res = (vec_basis_ * c - v).norm() / std::max(1.0, v.norm());
  if (res > 1e-8) throw Error(ErrorCode::NotInAlgebra, "matrix is not in " + name_ + " (residual " + std::to_string(res) + ")");
  return c;
}

MatrixXd MatrixLieAlgebra::ad(const VectorXd& x) const {
  const Eigen::Index d = dim();
  MatrixXd out = MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (x(i) != 0.0) out += x(i) * ad_basis_[i];
  return out;
}

VectorXd MatrixLieAlgebra::bracket(const VectorXd& a, const VectorXd& b) const {
  VectorXd out = VectorXd::Zero(dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (a(i) != 0.0) out += a(i) * (ad_basis_[i] * b);
  return out;
}

AlgebraPtr make_algebra(const AlgebraSpec& spec) { return std::make_shared<const MatrixLieAlgebra>(spec); }

// ---------------------------------------------------------------------------
// Element / Subspace / triples
// ---------------------------------------------------------------------------

Element::Element(AlgebraPtr algebra, VectorXd coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw Error(ErrorCode::InvalidSpec, "element without algebra");
  if (coords_.size() != algebra_->dim())
    throw Error(ErrorCode::InvalidSpec, "coordinate vector has length " + std::to_string(coords_.size()) +
                                            ", expected " + std::to_string(algebra_->dim()));
  matrix_ = algebra_->matrix(coords_);
}

Element Element::from_matrix(AlgebraPtr algebra, const MatrixXcd& m) {
  VectorXd c = algebra->coords(m);
  return Element(std::move(algebra), std::move(c));
}

Element Element::zero(AlgebraPtr algebra) {
  const auto d = algebra->dim();
  return Element(std::move(algebra), VectorXd::Zero(d));
}

Element Element::basis_vector(AlgebraPtr algebra, Eigen::Index i) {
  VectorXd c = VectorXd::Zero(algebra->dim());
  c(i) = 1.0;
  return Element(std::move(algebra), std::move(c));
}

void require_same_algebra(const Element& a, const Element& b) {
  if (a.algebra() != b.algebra())
    throw Error(ErrorCode::MixedAlgebras, a.algebra()->name() + " vs " + b.algebra()->name());
}

Element Element::operator+(const Element& o) const {
  require_same_algebra(*this, o);
  return Element(algebra_, coords_ + o.coords_);
}

Element Element::operator-(const Element& o) const {
  require_same_algebra(*this, o);
  return Element(algebra_, coords_ - o.coords_);
}

Subspace::Subspace(AlgebraPtr algebra, const MatrixXd& spanning) : algebra_(std::move(algebra)) {
  basis_ = spanning.cols() == 0 ? MatrixXd(algebra_->dim(), 0) : column_space(spanning);
}

Subspace Subspace::whole(AlgebraPtr algebra) {
  const auto d = algebra->dim();
  return Subspace(std::move(algebra), MatrixXd::Identity(d, d));
}

Subspace Subspace::zero(AlgebraPtr algebra) {
  const auto d = algebra->dim();
  return Subspace(std::move(algebra), MatrixXd(d, 0));
}

bool Subspace::contains(const VectorXd& v, double tol) const {
  const VectorXd r = v - basis_ * (basis_.transpose() * v);
  return r.norm() <= tol * std::max(1.0, v.norm());
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (algebra_ != other.algebra_) throw Error(ErrorCode::MixedAlgebras, "subspace intersection");
  return Subspace(algebra_, intersect_spans(basis_, other.basis_));
}

double Sl2Triple::residual() const {
  const auto& g = *X.algebra();
  const VectorXd hx = g.bracket(H.coords(), X.coords()) - 2.0 * X.coords();
  const VectorXd hy = g.bracket(H.coords(), Y.coords()) + 2.0 * Y.coords();
  const VectorXd xy = g.bracket(X.coords(), Y.coords()) - H.coords();
  return std::max({hx.cwiseAbs().maxCoeff(), hy.cwiseAbs().maxCoeff(), xy.cwiseAbs().maxCoeff()});
}

void Sl2Triple::check(double tol) const {
  require_same_algebra(X, H);
  require_same_algebra(X, Y);
  const double scale = std::max({1.0, X.norm(), H.norm(), Y.norm()});
  if (residual() > tol * scale) throw Error(ErrorCode::NoSolution, "sl2 relations fail");
  if (!is_nilpotent(X) || !is_nilpotent(Y)) throw Error(ErrorCode::NotNilpotent, "triple ends are not nilpotent");
}

Element bracket(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  const MatrixXcd c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return Element::from_matrix(a.algebra(), c);
}

Subspace centralizer(const std::vector<Element>& elements) {
  if (elements.empty()) throw Error(ErrorCode::InvalidSpec, "centralizer of an empty list");
  const auto& alg = elements.front().algebra();
  const Eigen::Index d = alg->dim();
  MatrixXd stacked(d * static_cast<Eigen::Index>(elements.size()), d);
  for (size_t i = 0; i < elements.size(); ++i) {
    require_same_algebra(elements.front(), elements[i]);
    stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) = alg->ad(elements[i].coords());
  }
  return Subspace(alg, null_space(stacked));
}

Subspace centralizer(const Sl2Triple& t) { return centralizer(std::vector<Element>{t.X, t.H, t.Y}); }

int adjoint_orbit_dimension(const Element& x) {
  return static_cast<int>(numerical_rank(x.algebra()->ad(x.coords())));
}

int centralizer_dimension(const Element& x) {
  return static_cast<int>(x.algebra()->dim()) - adjoint_orbit_dimension(x);
}

bool is_nilpotent(const Element& x, double tol) {
  const MatrixXcd& m = x.matrix();
  const double scale = std::max(1.0, std::pow(m.cwiseAbs().maxCoeff(), m.rows()));
  return matrix_power(m, static_cast<int>(m.rows())).cwiseAbs().maxCoeff() < tol * scale;
}

bool is_regular(const Element& x) { return centralizer_dimension(x) == x.algebra()->rank(); }

Sl2Triple jacobson_morozov(const Element& x) {
  const auto& alg = x.algebra();
  const auto& g = *alg;
  if (x.coords().cwiseAbs().maxCoeff() < 1e-14) throw Error(ErrorCode::ZeroNilpositive, "X = 0");
  if (!is_nilpotent(x)) throw Error(ErrorCode::NotNilpotent, "X is not nilpotent");

  const double scale = std::max(1.0, x.norm());
  const MatrixXd adx = g.ad(x.coords());
  // H = [X, Z] with [H, X] = 2X, i.e. ad_X^2 Z = -2X.
  const MatrixXd adx2 = adx * adx;
  const VectorXd z = adx2.completeOrthogonalDecomposition().solve(-2.0 * x.coords());
  const VectorXd h = adx * z;
  const double r1 = (g.bracket(h, x.coords()) - 2.0 * x.coords()).norm();
  if (r1 > 1e-8 * scale) throw Error(ErrorCode::NoSolution, "no H with [H,X] = 2X (residual " + std::to_string(r1) + ")");

  // [X, Y] = H and [H, Y] = -2Y.
  const Eigen::Index d = g.dim();
  MatrixXd a(2 * d, d);
  a.topRows(d) = adx;
  a.bottomRows(d) = g.ad(h) + 2.0 * MatrixXd::Identity(d, d);
  VectorXd rhs = VectorXd::Zero(2 * d);
  rhs.head(d) = h;
  const VectorXd y = a.completeOrthogonalDecomposition().solve(rhs);
  const double r2 = (a * y - rhs).norm();
  if (r2 > 1e-8 * std::max(scale, h.norm())) throw Error(ErrorCode::NoSolution, "no Y for the triple (residual " + std::to_string(r2) + ")");

  Sl2Triple t{x, Element(alg, h), Element(alg, y)};
  t.check(1e-8);
  return t;
}

Element group_conjugate(const MatrixXcd& g, const Element& x) {
  Eigen::PartialPivLU<MatrixXcd> lu(g);
  if (std::abs(lu.determinant()) < 1e-300) throw Error(ErrorCode::InvalidSpec, "g is singular");
  const MatrixXcd gx = g * x.matrix() * lu.inverse();
  return Element::from_matrix(x.algebra(), gx);
}

VectorXd orbit_invariants(const Element& x) {
  const Eigen::VectorXcd c = characteristic_coefficients(x.matrix());
  if (!x.algebra()->complex_entries()) return c.real();
  VectorXd out(2 * c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    out(2 * i) = c(i).real();
    out(2 * i + 1) = c(i).imag();
  }
  return out;
}

}  // namespace orbitkit
