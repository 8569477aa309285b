#include "orbitkit/orbitcomb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "families.hpp"

namespace orbitkit {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
// Singular values of a unit-norm nilpotent's powers below this count as zero.
constexpr double kNilpotentRankTol = 1e-7;

std::string strip_braces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '{' && c != '}' && c != ' ' && c != '\t') out.push_back(c);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw Error(ErrorCode::InvalidLabel, "partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error(ErrorCode::InvalidLabel, "partition parts must be weakly decreasing");
    total_ += parts_[i];
  }
}

Partition Partition::parse(std::string_view text) {
  const std::string s = strip_braces(text);
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw Error(ErrorCode::InvalidLabel, "empty part in '" + std::string(text) + "'");
    try {
      size_t used = 0;
      parts.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidLabel, "bad partition '" + std::string(text) + "'");
    }
  }
  return Partition(std::move(parts));
}

int Partition::multiplicity(int length) const { return int(std::count(parts_.begin(), parts_.end(), length)); }

bool Partition::is_type_c() const {
  for (int d : parts_)
    if (d % 2 == 1 && multiplicity(d) % 2 == 1) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string out;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

Partition partition_of(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

bool dominates(const Partition& a, const Partition& b) {
  if (a.total() != b.total()) return false;
  int sa = 0, sb = 0;
  const size_t len = std::max(a.parts().size(), b.parts().size());
  for (size_t i = 0; i < len; ++i) {
    sa += i < a.parts().size() ? a.parts()[i] : 0;
    sb += i < b.parts().size() ? b.parts()[i] : 0;
    if (sa < sb) return false;
  }
  return true;
}

// ------------------------------------------------------ SignedYoungDiagram

SignedYoungDiagram::SignedYoungDiagram(std::vector<SignedRow> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.length <= 0) throw Error(ErrorCode::InvalidLabel, "row lengths must be positive");
    if (r.sign != 1 && r.sign != -1) throw Error(ErrorCode::InvalidLabel, "row signs must be +1 or -1");
    const int first = (r.length + 1) / 2, second = r.length / 2;
    p_ += r.sign > 0 ? first : second;
    q_ += r.sign > 0 ? second : first;
  }
  std::sort(rows_.begin(), rows_.end(), [](const SignedRow& a, const SignedRow& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.sign > b.sign;
  });
}

SignedYoungDiagram SignedYoungDiagram::parse(std::string_view text) {
  std::vector<SignedRow> rows;
  std::stringstream ss{std::string(text)};
  std::string tok;
  while (ss >> tok) {
    if (tok == "{}" || tok == "0") continue;
    SignedRow row;
    row.length = int(tok.size());
    for (size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] != '+' && tok[i] != '-') throw Error(ErrorCode::InvalidLabel, "bad signed row '" + tok + "'");
      if (i > 0 && tok[i] == tok[i - 1]) throw Error(ErrorCode::InvalidLabel, "signs must alternate in '" + tok + "'");
    }
    row.sign = tok[0] == '+' ? 1 : -1;
    rows.push_back(row);
  }
  return SignedYoungDiagram(std::move(rows));
}

Partition SignedYoungDiagram::shape() const {
  std::vector<int> parts;
  for (const auto& r : rows_) parts.push_back(r.length);
  return Partition(std::move(parts));
}

std::pair<int, int> SignedYoungDiagram::sign_counts(int length) const {
  int plus = 0, minus = 0;
  for (const auto& r : rows_)
    if (r.length == length) (r.sign > 0 ? plus : minus)++;
  return {plus, minus};
}

std::string SignedYoungDiagram::to_string() const {
  if (rows_.empty()) return "{}";
  std::string out;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) out += ' ';
    char c = rows_[i].sign > 0 ? '+' : '-';
    for (int k = 0; k < rows_[i].length; ++k) {
      out += c;
      c = c == '+' ? '-' : '+';
    }
  }
  return out;
}

std::string label_string(const OrbitLabel& label) {
  return std::visit([](const auto& l) { return l.to_string(); }, label);
}

Partition label_shape(const OrbitLabel& label) {
  if (const auto* p = std::get_if<Partition>(&label)) return *p;
  return std::get<SignedYoungDiagram>(label).shape();
}

// ------------------------------------------------------------- enumeration

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int d = std::min(remaining, max_part); d >= 1; --d) {
    cur.push_back(d);
    partitions_rec(remaining - d, d, cur, out);
    cur.pop_back();
  }
}

// All partitions of total (total = 0 gives the empty partition).
std::vector<Partition> all_partitions(int total) {
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(total, total, cur, out);
  return out;
}

std::vector<Partition> type_c_partitions(int total) {
  std::vector<Partition> out;
  for (auto& p : all_partitions(total))
    if (p.is_type_c()) out.push_back(std::move(p));
  return out;
}

std::vector<int> distinct_lengths(const Partition& p) {
  std::vector<int> d = p.parts();
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

// For each distinct length, every admissible count of '+'-starting rows.
template <typename Admissible>
std::vector<SignedYoungDiagram> sign_shape(const Partition& shape, Admissible admissible) {
  const std::vector<int> lengths = distinct_lengths(shape);
  std::vector<SignedYoungDiagram> out;
  std::vector<SignedRow> rows;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == lengths.size()) {
      out.emplace_back(rows);
      return;
    }
    const int d = lengths[k], m = shape.multiplicity(d);
    for (int plus = m; plus >= 0; --plus) {
      if (!admissible(d, m, plus)) continue;
      for (int i = 0; i < m; ++i) rows.push_back({d, i < plus ? 1 : -1});
      rec(k + 1);
      rows.resize(rows.size() - m);
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<Partition> enumerate_partitions(int total, FamilyTag tag) {
  if (total < 1) throw Error(ErrorCode::InvalidSpec, "partition total must be >= 1");
  return tag == FamilyTag::C ? type_c_partitions(total) : all_partitions(total);
}

std::vector<SignedYoungDiagram> enumerate_signed_diagrams(int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorCode::InvalidSpec, "signature must be nonnegative");
  std::vector<SignedYoungDiagram> out;
  for (const auto& shape : all_partitions(p + q))
    for (auto& s : sign_shape(shape, [](int, int, int) { return true; }))
      if (s.p() == p && s.q() == q) out.push_back(std::move(s));
  return out;
}

std::vector<SignedYoungDiagram> enumerate_symplectic_diagrams(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "rank must be nonnegative");
  std::vector<SignedYoungDiagram> out;
  for (const auto& shape : type_c_partitions(2 * n))
    for (auto& s : sign_shape(shape, [](int d, int m, int plus) { return d % 2 == 0 || 2 * plus == m; }))
      out.push_back(std::move(s));
  return out;
}

// ----------------------------------------------------------- centralizers

bool CentralizerFactor::compact() const {
  switch (kind) {
    case Kind::U: return a == 0 || b == 0;
    case Kind::OC: return a <= 1;
    case Kind::SpC: return a == 0;
    case Kind::Torus: return a == 0;
  }
  return false;
}

int CentralizerFactor::real_dimension() const {
  switch (kind) {
    case Kind::U: return (a + b) * (a + b);
    case Kind::OC: return a * (a - 1);
    case Kind::SpC: return a * (a + 1);
    case Kind::Torus: return a;
  }
  return 0;
}

std::string CentralizerFactor::to_string() const {
  switch (kind) {
    case Kind::U: return "u(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::OC: return "o(" + std::to_string(a) + ",C)";
    case Kind::SpC: return "sp(" + std::to_string(a) + ",C)";
    case Kind::Torus: return "gl-torus(" + std::to_string(a) + ")";
  }
  return "?";
}

int CentralizerType::real_dimension() const {
  int d = 0;
  for (const auto& f : factors) d += f.real_dimension();
  return d;
}

std::string CentralizerType::to_string() const {
  if (factors.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " x ";
    out += factors[i].to_string();
  }
  return out;
}

CentralizerType reductive_centralizer(const OrbitLabel& label) {
  CentralizerType c;
  if (const auto* s = std::get_if<SignedYoungDiagram>(&label)) {
    for (int d : distinct_lengths(s->shape())) {
      const auto [plus, minus] = s->sign_counts(d);
      c.factors.push_back({CentralizerFactor::Kind::U, plus, minus});
    }
  } else {
    const auto& p = std::get<Partition>(label);
    if (!p.is_type_c()) throw Error(ErrorCode::InvalidLabel, "'" + p.to_string() + "' is not a type C partition");
    for (int d : distinct_lengths(p)) {
      const int m = p.multiplicity(d);
      if (d % 2 == 1)
        c.factors.push_back({CentralizerFactor::Kind::SpC, m, 0});
      else
        c.factors.push_back({CentralizerFactor::Kind::OC, m, 0});
    }
  }
  c.compact_mod_center = std::all_of(c.factors.begin(), c.factors.end(), [](const auto& f) { return f.compact(); });
  return c;
}

bool is_noticed_rule(const OrbitLabel& label) {
  if (const auto* s = std::get_if<SignedYoungDiagram>(&label)) {
    for (int d : distinct_lengths(s->shape())) {
      const auto [plus, minus] = s->sign_counts(d);
      if (plus > 0 && minus > 0) return false;
    }
    return true;
  }
  return reductive_centralizer(label).compact_mod_center;
}

// ---------------------------------------------------------- representatives

namespace {

// Jordan-type nilpotent: one shift block per part, v_j -> v_{j+1}.
MatrixXcd shift_blocks(const std::vector<int>& lengths) {
  const int n = std::accumulate(lengths.begin(), lengths.end(), 0);
  MatrixXcd x = MatrixXcd::Zero(n, n);
  int off = 0;
  for (int d : lengths) {
    for (int j = 0; j + 1 < d; ++j) x(off + j + 1, off + j) = 1.0;
    off += d;
  }
  return x;
}

MatrixXcd jordan_upper(const Partition& p) {
  const int n = p.total();
  MatrixXcd x = MatrixXcd::Zero(n, n);
  int off = 0;
  for (int d : p.parts()) {
    for (int j = 0; j + 1 < d; ++j) x(off + j, off + j + 1) = 1.0;
    off += d;
  }
  return x;
}

// Nilpotent in u(p,q) (coordinates with form diag(I_p, -I_q)).
MatrixXcd unitary_rep(const SignedYoungDiagram& s) {
  std::vector<int> lengths;
  for (const auto& r : s.rows()) lengths.push_back(r.length);
  const MatrixXcd x0 = shift_blocks(lengths);
  const int n = int(x0.rows());
  if (n == 0) return x0;
  MatrixXcd m = MatrixXcd::Zero(n, n);
  int off = 0;
  for (const auto& r : s.rows()) {
    cd kappa = double(r.sign);
    for (int k = 0; k + 1 < r.length; ++k) kappa *= I;
    for (int i = 0; i < r.length; ++i) m(off + i, off + r.length - 1 - i) = (i % 2 ? -1.0 : 1.0) * kappa;
    off += r.length;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
  MatrixXcd t(n, n);
  for (int k = 0; k < n; ++k) t.col(k) = es.eigenvectors().col(order[k]) / std::sqrt(std::abs(es.eigenvalues()(order[k])));
  return t.inverse() * x0 * t;
}

// Symplectic Gram-Schmidt: real T with T^T B T = [[0, I], [-I, 0]].
MatrixXd symplectic_frame(const MatrixXd& b) {
  const Eigen::Index n2 = b.rows(), n = n2 / 2;
  std::vector<VectorXd> rest;
  for (Eigen::Index i = 0; i < n2; ++i) rest.push_back(VectorXd::Unit(n2, i));
  MatrixXd t(n2, n2);
  for (Eigen::Index k = 0; k < n; ++k) {
    size_t bi = 0, bj = 1;
    double best = -1.0;
    for (size_t i = 0; i < rest.size(); ++i)
      for (size_t j = 0; j < rest.size(); ++j) {
        const double v = std::abs(rest[i].dot(b * rest[j]));
        if (v > best) best = v, bi = i, bj = j;
      }
    if (best < 1e-12) throw Error(ErrorCode::DegenerateForm, "form is degenerate");
    const VectorXd e = rest[bi];
    const VectorXd f = rest[bj] / e.dot(b * rest[bj]);
    std::vector<VectorXd> next;
    for (size_t i = 0; i < rest.size(); ++i) {
      if (i == bi || i == bj) continue;
      VectorXd v = rest[i] - rest[i].dot(b * f) * e + rest[i].dot(b * e) * f;
      next.push_back(v);
    }
    rest = std::move(next);
    t.col(k) = e;
    t.col(n + k) = f;
  }
  return t;
}

// Nilpotent in sp(2n) with form [[0, I], [-I, 0]]. Even rows use the row
// sign; odd rows are paired off, one + and one - each.
MatrixXcd symplectic_rep(const std::vector<SignedRow>& even_rows, const std::vector<int>& odd_pairs) {
  std::vector<int> lengths;
  for (const auto& r : even_rows) lengths.push_back(r.length);
  for (int d : odd_pairs) {
    lengths.push_back(d);
    lengths.push_back(d);
  }
  const MatrixXcd x0 = shift_blocks(lengths);
  const int n2 = int(x0.rows());
  if (n2 == 0) return x0;
  MatrixXd b = MatrixXd::Zero(n2, n2);
  int off = 0;
  for (const auto& r : even_rows) {
    const double eps = -double(r.sign);
    for (int i = 0; i < r.length; ++i) b(off + i, off + r.length - 1 - i) = eps * (i % 2 ? -1.0 : 1.0);
    off += r.length;
  }
  for (int d : odd_pairs) {
    for (int i = 0; i < d; ++i) {
      const double s = i % 2 ? -1.0 : 1.0;
      b(off + i, off + d + d - 1 - i) = s;
      b(off + d + d - 1 - i, off + i) = -s;
    }
    off += 2 * d;
  }
  const MatrixXd t = symplectic_frame(b);
  return t.inverse().cast<cd>() * x0 * t.cast<cd>();
}

MatrixXcd symplectic_rep(const SignedYoungDiagram& s) {
  std::vector<SignedRow> even;
  std::vector<int> odd;
  const Partition shape = s.shape();
  for (int d : distinct_lengths(shape)) {
    const auto [plus, minus] = s.sign_counts(d);
    if (d % 2 == 0) {
      for (int i = 0; i < plus; ++i) even.push_back({d, 1});
      for (int i = 0; i < minus; ++i) even.push_back({d, -1});
    } else {
      if (plus != minus) throw Error(ErrorCode::InvalidLabel, "odd rows of '" + s.to_string() + "' must pair + with -");
      for (int i = 0; i < plus; ++i) odd.push_back(d);
    }
  }
  return symplectic_rep(even, odd);
}

MatrixXcd symplectic_rep(const Partition& p) {
  if (!p.is_type_c()) throw Error(ErrorCode::InvalidLabel, "'" + p.to_string() + "' is not a type C partition");
  std::vector<SignedRow> even;
  std::vector<int> odd;
  for (int d : distinct_lengths(p)) {
    const int m = p.multiplicity(d);
    if (d % 2 == 0)
      for (int i = 0; i < m; ++i) even.push_back({d, -1});
    else
      for (int i = 0; i < m / 2; ++i) odd.push_back(d);
  }
  return symplectic_rep(even, odd);
}

int symplectic_half(const MatrixLieAlgebra& g) { return g.matrix_size() / 2; }

}  // namespace

std::vector<OrbitLabel> nilpotent_orbit_labels(const AlgebraPtr& g) {
  std::vector<OrbitLabel> out;
  const int size = g->matrix_size();
  if (g->form_kind() == FormKind::Hermitian) {
    for (auto& s : enumerate_signed_diagrams(g->spec().p, g->spec().q)) out.emplace_back(std::move(s));
  } else if (g->form_kind() == FormKind::Symplectic) {
    for (auto& s : enumerate_symplectic_diagrams(size / 2)) out.emplace_back(std::move(s));
  } else if (g->family() == Family::SpC) {
    for (auto& p : type_c_partitions(size)) out.emplace_back(std::move(p));
  } else {
    for (auto& p : all_partitions(size)) out.emplace_back(std::move(p));
  }
  return out;
}

Element representative(const AlgebraPtr& g, const OrbitLabel& label) {
  const AlgebraSpec& spec = g->spec();
  const std::string where = "label '" + label_string(label) + "' for " + g->name();
  switch (g->form_kind()) {
    case FormKind::Hermitian: {
      const auto* s = std::get_if<SignedYoungDiagram>(&label);
      if (!s || s->p() != spec.p || s->q() != spec.q) throw Error(ErrorCode::InvalidLabel, where);
      return Element::from_matrix(g, unitary_rep(*s));
    }
    case FormKind::Symplectic: {
      const auto* s = std::get_if<SignedYoungDiagram>(&label);
      const int n = symplectic_half(*g);
      if (!s || s->p() != n || s->q() != n) throw Error(ErrorCode::InvalidLabel, where);
      return Element::from_matrix(g, symplectic_rep(*s));
    }
    case FormKind::None:
      break;
  }
  const auto* p = std::get_if<Partition>(&label);
  if (!p || p->total() != g->matrix_size()) throw Error(ErrorCode::InvalidLabel, where);
  if (spec.family == Family::SpC) return Element::from_matrix(g, symplectic_rep(*p));
  if (spec.family == Family::SlR || spec.family == Family::GlR) return Element::from_matrix(g, jordan_upper(*p));
  throw Error(ErrorCode::InvalidLabel, where);
}

// -------------------------------------------------------- label from matrix

namespace {

template <typename M>
int rank_abs(const M& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<M> svd(m);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > kNilpotentRankTol) ++r;
  return r;
}

template <typename M>
M kernel_abs(const M& m) {
  const Eigen::Index n = m.cols();
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeFullV);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > kNilpotentRankTol) ++r;
  return svd.matrixV().rightCols(n - r);
}

// Number of Jordan rows of each length d = 1..n, from ranks of powers.
template <typename M>
std::vector<int> row_counts(const M& x) {
  const int n = int(x.rows());
  std::vector<int> ranks(n + 2, 0);
  ranks[0] = n;
  M pw = M::Identity(n, n);
  for (int k = 1; k <= n + 1; ++k) {
    pw = pw * x;
    ranks[k] = rank_abs(pw);
  }
  std::vector<int> counts(n + 1, 0);
  for (int d = 1; d <= n; ++d) counts[d] = ranks[d - 1] - 2 * ranks[d] + ranks[d + 1];
  return counts;
}

std::pair<int, int> checked_signature(const std::pair<int, int>& sig, int rows, int d) {
  if (sig.first + sig.second != rows)
    throw Error(ErrorCode::NoSolution, "sign form on rows of length " + std::to_string(d) + " is degenerate");
  return sig;
}

}  // namespace

OrbitLabel nilpotent_label(const Element& x) {
  const MatrixLieAlgebra& g = *x.algebra();
  if (!is_nilpotent(x)) throw Error(ErrorCode::NotNilpotent, "orbit labels need a nilpotent element");
  const double scale = x.matrix().norm();
  const int n = g.matrix_size();
  const bool real_symplectic = g.form_kind() == FormKind::Symplectic && !g.complex_entries();

  if (scale == 0.0) {
    if (g.form_kind() == FormKind::Hermitian) {
      std::vector<SignedRow> rows;
      for (int i = 0; i < g.spec().p; ++i) rows.push_back({1, 1});
      for (int i = 0; i < g.spec().q; ++i) rows.push_back({1, -1});
      return SignedYoungDiagram(rows);
    }
    if (real_symplectic) {
      std::vector<SignedRow> rows;
      for (int i = 0; i < n / 2; ++i) rows.push_back({1, 1}), rows.push_back({1, -1});
      return SignedYoungDiagram(rows);
    }
    return Partition(std::vector<int>(n, 1));
  }

  if (g.form_kind() == FormKind::Hermitian) {
    const MatrixXcd xn = x.matrix() / scale;
    const std::vector<int> counts = row_counts(xn);
    const MatrixXcd jform = g.hermitian_form();
    const MatrixXcd mx = -I * xn;
    std::vector<SignedRow> rows;
    for (int d = 1; d <= n; ++d) {
      if (counts[d] == 0) continue;
      const MatrixXcd k = kernel_abs(matrix_power(xn, d));
      const MatrixXcd h = k.adjoint() * jform * matrix_power(mx, d - 1) * k;
      const auto [plus, minus] = checked_signature(inertia(h), counts[d], d);
      for (int i = 0; i < plus; ++i) rows.push_back({d, 1});
      for (int i = 0; i < minus; ++i) rows.push_back({d, -1});
    }
    return SignedYoungDiagram(rows);
  }

  if (real_symplectic) {
    const MatrixXd xn = x.matrix().real() / scale;
    const std::vector<int> counts = row_counts(xn);
    const MatrixXd omega_t = g.form().real().transpose();
    std::vector<SignedRow> rows;
    for (int d = 1; d <= n; ++d) {
      if (counts[d] == 0) continue;
      if (d % 2 == 1) {
        for (int i = 0; i < counts[d] / 2; ++i) rows.push_back({d, 1}), rows.push_back({d, -1});
        continue;
      }
      const MatrixXd k = kernel_abs(matrix_power(xn, d));
      const MatrixXd b = k.transpose() * omega_t * matrix_power(xn, d - 1) * k;
      const auto [plus, minus] = checked_signature(inertia(b), counts[d], d);
      for (int i = 0; i < plus; ++i) rows.push_back({d, 1});
      for (int i = 0; i < minus; ++i) rows.push_back({d, -1});
    }
    return SignedYoungDiagram(rows);
  }

  const std::vector<int> counts = row_counts(MatrixXcd(x.matrix() / scale));
  std::vector<int> parts;
  for (int d = n; d >= 1; --d)
    for (int i = 0; i < counts[d]; ++i) parts.push_back(d);
  return Partition(parts);
}

// ------------------------------------------------------------- Levi oracle

namespace {

// Nilpotents of the maximal proper standard Levi subalgebras, as matrices
// in the coordinates of g.
std::vector<MatrixXcd> levi_nilpotents(const MatrixLieAlgebra& g) {
  std::vector<MatrixXcd> out;
  const AlgebraSpec& spec = g.spec();
  const int size = g.matrix_size();

  if (g.form_kind() == FormKind::Hermitian) {
    const int p = spec.p, q = spec.q;
    for (int k = 1; k <= std::min(p, q); ++k) {
      // Basis w_j, w'_j (isotropic pairs), then the rest.
      MatrixXcd t = MatrixXcd::Zero(size, size);
      const double r = 1.0 / std::sqrt(2.0);
      for (int j = 0; j < k; ++j) {
        t(j, j) = r;
        t(p + j, j) = r;
        t(j, k + j) = r;
        t(p + j, k + j) = -r;
      }
      int col = 2 * k;
      for (int j = k; j < p; ++j) t(j, col++) = 1.0;
      for (int j = k; j < q; ++j) t(p + j, col++) = 1.0;
      const MatrixXcd tinv = t.inverse();
      for (const auto& lam : all_partitions(k)) {
        const MatrixXcd a = jordan_upper(lam);
        for (const auto& sigma : enumerate_signed_diagrams(p - k, q - k)) {
          MatrixXcd x0 = MatrixXcd::Zero(size, size);
          x0.topLeftCorner(k, k) = a;
          x0.block(k, k, k, k) = -a.adjoint();
          x0.bottomRightCorner(size - 2 * k, size - 2 * k) = unitary_rep(sigma);
          out.push_back(t * x0 * tinv);
        }
      }
    }
    return out;
  }

  if (spec.family == Family::SpR || spec.family == Family::SpC ||
      (spec.family == Family::SlR && g.form_kind() == FormKind::Symplectic)) {
    const int n = size / 2;
    const bool complex = spec.family == Family::SpC;
    for (int k = 1; k <= n; ++k) {
      const int m = n - k;
      // Basis e_1..e_k, f_1..f_k, e_{k+1}..e_n, f_{k+1}..f_n.
      MatrixXcd t = MatrixXcd::Zero(size, size);
      for (int j = 0; j < k; ++j) {
        t(j, j) = 1.0;
        t(n + j, k + j) = 1.0;
      }
      for (int j = 0; j < m; ++j) {
        t(k + j, 2 * k + j) = 1.0;
        t(n + k + j, 2 * k + m + j) = 1.0;
      }
      std::vector<MatrixXcd> inner;
      if (complex) {
        for (const auto& pc : type_c_partitions(2 * m)) inner.push_back(symplectic_rep(pc));
      } else {
        for (const auto& s : enumerate_symplectic_diagrams(m)) inner.push_back(symplectic_rep(s));
      }
      for (const auto& lam : all_partitions(k)) {
        const MatrixXcd a = jordan_upper(lam);
        for (const auto& z : inner) {
          MatrixXcd x0 = MatrixXcd::Zero(size, size);
          x0.topLeftCorner(k, k) = a;
          x0.block(k, k, k, k) = -a.transpose();
          if (m > 0) x0.bottomRightCorner(2 * m, 2 * m) = z;
          out.push_back(t * x0 * t.transpose());
        }
      }
    }
    return out;
  }

  if (spec.family == Family::SlR || spec.family == Family::GlR) {
    for (int n1 = 1; 2 * n1 <= size; ++n1) {
      for (const auto& lam : all_partitions(n1))
        for (const auto& mu : all_partitions(size - n1)) {
          MatrixXcd x = MatrixXcd::Zero(size, size);
          x.topLeftCorner(n1, n1) = jordan_upper(lam);
          x.bottomRightCorner(size - n1, size - n1) = jordan_upper(mu);
          out.push_back(x);
        }
    }
    return out;
  }
  throw Error(ErrorCode::UnsupportedFamily, "no Levi scan for " + g.name());
}

bool same_label(const OrbitLabel& a, const OrbitLabel& b) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<Partition>(&a)) return *p == std::get<Partition>(b);
  return std::get<SignedYoungDiagram>(a) == std::get<SignedYoungDiagram>(b);
}

}  // namespace

bool is_noticed_oracle(const Element& x) {
  if (!is_nilpotent(x)) throw Error(ErrorCode::NotNilpotent, "the Levi scan needs a nilpotent element");
  const AlgebraPtr& g = x.algebra();
  const OrbitLabel target = nilpotent_label(x);
  const int dim = adjoint_orbit_dimension(x);
  for (const MatrixXcd& m : levi_nilpotents(*g)) {
    const Element y = Element::from_matrix(g, m);
    if (adjoint_orbit_dimension(y) == dim && same_label(nilpotent_label(y), target)) return false;
  }
  return true;
}

Subspace reductive_centralizer_numeric(const Element& x) {
  if (x.norm() == 0.0) return Subspace::whole(x.algebra());
  return centralizer(jacobson_morozov(x));
}

bool compact_mod_center_numeric(const Subspace& l) {
  const MatrixLieAlgebra& g = *l.algebra();
  const MatrixXd& k = g.traceform();
  MatrixXd w = l.basis();
  if (g.center_basis().cols() > 0 && w.cols() > 0) {
    const MatrixXd constraint = g.center_basis().transpose() * k * w;
    w = w * null_space(constraint);
  }
  if (w.cols() == 0) return true;
  const MatrixXd gram = w.transpose() * k * w;
  const auto [pos, neg] = inertia(gram);
  return pos == 0 && neg == int(w.cols());
}

// ---------------------------------------------------------- classification

bool OrbitClass::discrepancy() const {
  if (noticed != noticed_oracle) return true;
  if (centralizer_compact_numeric != centralizer.compact_mod_center) return true;
  return noticed_reference.has_value() && *noticed_reference != noticed_oracle;
}

std::optional<std::vector<std::string>> reference_noticed(const std::string& group) {
  if (group == "sp(4,C)") return std::vector<std::string>{"4", "2,2"};
  return std::nullopt;
}

std::vector<OrbitClass> classify_orbits(const AlgebraPtr& g) {
  std::vector<OrbitLabel> labels;
  const AlgebraSpec& spec = g->spec();
  switch (spec.family) {
    case Family::UPQ:
    case Family::SuPQ:
      for (auto& s : enumerate_signed_diagrams(spec.p, spec.q)) labels.emplace_back(std::move(s));
      break;
    case Family::SpC:
      for (auto& p : enumerate_partitions(g->matrix_size(), FamilyTag::C)) labels.emplace_back(std::move(p));
      break;
    default:
      throw Error(ErrorCode::UnsupportedFamily, "no classification table for " + g->name());
  }
  const auto reference = reference_noticed(g->name());
  std::vector<OrbitClass> table;
  for (const auto& label : labels) {
    OrbitClass c;
    c.label = label;
    const Element x = representative(g, label);
    c.representative = x.coords();
    c.dimension = adjoint_orbit_dimension(x);
    c.centralizer = reductive_centralizer(label);
    c.noticed = is_noticed_rule(label);
    c.noticed_oracle = is_noticed_oracle(x);
    const Subspace l = reductive_centralizer_numeric(x);
    c.centralizer_dimension_numeric = int(l.dim());
    c.centralizer_compact_numeric = compact_mod_center_numeric(l);
    if (reference) {
      const std::string name = label_string(label);
      c.noticed_reference = std::find(reference->begin(), reference->end(), name) != reference->end();
    }
    table.push_back(std::move(c));
  }
  return table;
}

std::vector<OrbitClass> classify_orbits(std::string_view group) { return classify_orbits(make_algebra(group)); }

// ------------------------------------------------------------ closure order

std::vector<Cover> closure_order(const std::vector<OrbitLabel>& labels) {
  for (size_t i = 1; i < labels.size(); ++i) {
    if (labels[i].index() != labels[0].index()) throw Error(ErrorCode::MixedFamilies, "labels of different kinds");
    if (label_shape(labels[i]).total() != label_shape(labels[0]).total())
      throw Error(ErrorCode::MixedFamilies, "labels of different sizes");
    if (const auto* s = std::get_if<SignedYoungDiagram>(&labels[i])) {
      const auto& s0 = std::get<SignedYoungDiagram>(labels[0]);
      if (s->p() != s0.p() || s->q() != s0.q()) throw Error(ErrorCode::MixedFamilies, "signed diagrams of different signatures");
    }
  }
  std::vector<Partition> shapes;
  for (const auto& l : labels) shapes.push_back(label_shape(l));
  auto strictly_above = [](const Partition& a, const Partition& b) { return a != b && dominates(a, b); };
  std::vector<Cover> covers;
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < labels.size(); ++j) {
      if (!strictly_above(shapes[i], shapes[j])) continue;
      const bool between = std::any_of(shapes.begin(), shapes.end(), [&](const Partition& m) {
        return strictly_above(shapes[i], m) && strictly_above(m, shapes[j]);
      });
      if (!between) covers.push_back({i, j});
    }
  return covers;
}

// ------------------------------------------------------------------ writers

std::string orbit_table_tsv(const std::vector<OrbitClass>& table) {
  std::ostringstream os;
  os << "label\tdimension\tcentralizer\tnoticed_rule\tnoticed_oracle\n";
  for (const auto& c : table)
    os << label_string(c.label) << '\t' << c.dimension << '\t' << c.centralizer.to_string() << '\t'
       << (c.noticed ? "true" : "false") << '\t' << (c.noticed_oracle ? "true" : "false") << '\n';
  return os.str();
}

std::string orbit_table_records(const std::string& group, const std::vector<OrbitClass>& table) {
  std::ostringstream os;
  for (const auto& c : table) {
    os << "[orbit]\n"
       << "group = " << group << '\n'
       << "label = " << label_string(c.label) << '\n'
       << "dimension = " << c.dimension << '\n'
       << "centralizer = " << c.centralizer.to_string() << '\n'
       << "compact_mod_center = " << (c.centralizer.compact_mod_center ? "true" : "false") << '\n'
       << "centralizer_dim_numeric = " << c.centralizer_dimension_numeric << '\n'
       << "centralizer_compact_numeric = " << (c.centralizer_compact_numeric ? "true" : "false") << '\n'
       << "noticed_rule = " << (c.noticed ? "true" : "false") << '\n'
       << "noticed_oracle = " << (c.noticed_oracle ? "true" : "false") << '\n';
    if (c.noticed_reference) os << "noticed_reference = " << (*c.noticed_reference ? "true" : "false") << '\n';
    os << "discrepancy = " << (c.discrepancy() ? "true" : "false") << "\n\n";
  }
  return os.str();
}

std::string closure_dot(const std::vector<OrbitLabel>& labels, const std::vector<Cover>& covers) {
  std::ostringstream os;
  os << "digraph closure {\n  rankdir=TB;\n";
  for (size_t i = 0; i < labels.size(); ++i) os << "  n" << i << " [label=\"" << label_string(labels[i]) << "\"];\n";
  for (const auto& c : covers) os << "  n" << c.upper << " -> n" << c.lower << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace orbitkit
