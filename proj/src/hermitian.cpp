#include "mcs/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace mcs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SolverNonConvergence: return "SolverNonConvergence";
    case ErrorKind::IterationCap: return "IterationCap";
    case ErrorKind::AmbiguousRank: return "AmbiguousRank";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::GramMismatch: return "GramMismatch";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::RayUnbounded: return "RayUnbounded";
    case ErrorKind::PartitionOfUnityViolated: return "PartitionOfUnityViolated";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::ZeroGamma: return "ZeroGamma";
    case ErrorKind::InconsistentRows: return "InconsistentRows";
    case ErrorKind::NotVertex: return "NotVertex";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

const char* to_string(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::PositiveDefinite: return "PositiveDefinite";
    case PsdVerdict::PositiveSemidefiniteSingular: return "PositiveSemidefiniteSingular";
    case PsdVerdict::Indefinite: return "Indefinite";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::Validation, "Hermitian matrix must be square and nonempty");
  }
  const double asym = (m - m.adjoint()).norm();
  if (!std::isfinite(m.norm())) {
    throw Error(ErrorKind::Validation, "Hermitian matrix has non-finite entries");
  }
  if (asym > 1e-12 * m.norm() + 1e-300) {
    throw Error(ErrorKind::Validation,
                "matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& m) {
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return symmetrized(CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  return symmetrized(CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return symmetrized(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return symmetrized(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return symmetrized(m_ * s); }

HermitianMatrix HermitianMatrix::congruence(const CMatrix& gamma) const {
  return symmetrized(gamma.adjoint() * m_ * gamma);
}

// ---------------------------------------------------------------------------
// MatrixTuple

MatrixTuple::MatrixTuple(std::vector<HermitianMatrix> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::Validation, "tuple needs at least one coordinate");
  level_ = coords_.front().dim();
  if (level_ == 0) throw Error(ErrorKind::Validation, "tuple level must be positive");
  for (const auto& c : coords_) {
    if (c.dim() != level_) throw Error(ErrorKind::Validation, "tuple coordinates differ in size");
  }
}

MatrixTuple MatrixTuple::zero(std::size_t level, std::size_t g) {
  return MatrixTuple(std::vector<HermitianMatrix>(g, HermitianMatrix::zero(level)));
}

MatrixTuple MatrixTuple::scalars(const std::vector<double>& x) {
  std::vector<HermitianMatrix> c;
  for (double v : x) c.push_back(HermitianMatrix::scalar(v));
  return MatrixTuple(std::move(c));
}

MatrixTuple MatrixTuple::operator+(const MatrixTuple& o) const {
  if (o.g() != g() || o.level() != level()) throw Error(ErrorKind::ArityMismatch, "tuple shapes differ");
  std::vector<HermitianMatrix> c;
  for (std::size_t i = 0; i < g(); ++i) c.push_back(coords_[i] + o.coords_[i]);
  return MatrixTuple(std::move(c));
}

MatrixTuple MatrixTuple::operator-(const MatrixTuple& o) const { return *this + o * -1.0; }

MatrixTuple MatrixTuple::operator*(double s) const {
  std::vector<HermitianMatrix> c;
  for (const auto& x : coords_) c.push_back(x * s);
  return MatrixTuple(std::move(c));
}

MatrixTuple MatrixTuple::congruence(const CMatrix& gamma) const {
  if (static_cast<std::size_t>(gamma.rows()) != level_) {
    throw Error(ErrorKind::ArityMismatch, "gamma row count differs from tuple level");
  }
  std::vector<HermitianMatrix> c;
  for (const auto& x : coords_) c.push_back(x.congruence(gamma));
  return MatrixTuple(std::move(c));
}

double MatrixTuple::norm() const {
  double n = 0.0;
  for (const auto& c : coords_) n = std::max(n, c.frobenius_norm());
  return n;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.g() != y.g()) throw Error(ErrorKind::ArityMismatch, "direct sum of tuples with different g");
  const auto n = static_cast<Eigen::Index>(x.level());
  const auto m = static_cast<Eigen::Index>(y.level());
  std::vector<HermitianMatrix> c;
  for (std::size_t i = 0; i < x.g(); ++i) {
    CMatrix s = CMatrix::Zero(n + m, n + m);
    s.topLeftCorner(n, n) = x[i].matrix();
    s.bottomRightCorner(m, m) = y[i].matrix();
    c.push_back(HermitianMatrix::symmetrized(s));
  }
  return MatrixTuple(std::move(c));
}

MatrixTuple ampliate(const MatrixTuple& v, std::size_t n) {
  if (v.level() != 1) throw Error(ErrorKind::Validation, "ampliation expects a level-1 point");
  std::vector<HermitianMatrix> c;
  for (std::size_t i = 0; i < v.g(); ++i) c.push_back(HermitianMatrix::identity(n) * v[i](0, 0).real());
  return MatrixTuple(std::move(c));
}

double max_distance(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.g() != y.g() || x.level() != y.level()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < x.g(); ++i) d = std::max(d, (x[i].matrix() - y[i].matrix()).norm());
  return d;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      out.block(p * b.rows(), q * b.cols(), b.rows(), b.cols()) = a(p, q) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.dim());
  CMatrix a = m.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  const double scale = a.norm();
  constexpr int kMaxSweeps = 100;

  auto off_norm = [&]() {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  if (scale > 0.0) {
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      if (off_norm() <= 1e-15 * scale) break;
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const Complex apq = a(p, q);
          const double mag = std::abs(apq);
          if (mag <= 1e-18 * scale) continue;
          const Complex phase = apq / mag;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double theta = (aqq - app) / (2.0 * mag);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          const Complex jpp = c;
          const Complex jpq = s;
          const Complex jqp = -s * std::conj(phase);
          const Complex jqq = c * std::conj(phase);
          // A <- A J on columns p, q.
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex akp = a(k, p);
            const Complex akq = a(k, q);
            a(k, p) = akp * jpp + akq * jqp;
            a(k, q) = akp * jpq + akq * jqq;
          }
          // A <- J* A on rows p, q.
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex apk = a(p, k);
            const Complex aqk = a(q, k);
            a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
            a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = a(p, p).real();
          a(q, q) = a(q, q).real();
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = vkp * jpp + vkq * jqp;
            v(k, q) = vkp * jpq + vkq * jqq;
          }
        }
      }
    }
    if (sweep == kMaxSweeps) {
      throw SolverError("Jacobi eigensolver did not converge", off_norm());
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

namespace {

// Splits |values| into zero and nonzero parts at threshold, enforcing the factor-10 gap.
std::vector<bool> zero_mask(const std::vector<double>& magnitudes, double threshold) {
  std::vector<bool> zero(magnitudes.size());
  double max_zero = 0.0;
  double min_nonzero = std::numeric_limits<double>::infinity();
  bool any_zero = false;
  bool any_nonzero = false;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    zero[i] = magnitudes[i] <= threshold;
    if (zero[i]) {
      any_zero = true;
      max_zero = std::max(max_zero, magnitudes[i]);
    } else {
      any_nonzero = true;
      min_nonzero = std::min(min_nonzero, magnitudes[i]);
    }
  }
  if (any_zero && any_nonzero && min_nonzero < 10.0 * max_zero) {
    throw Error(ErrorKind::AmbiguousRank,
                "no spectral gap: largest zero " + std::to_string(max_zero) + ", smallest nonzero " +
                    std::to_string(min_nonzero));
  }
  return zero;
}

}  // namespace

CMatrix kernel_basis(const HermitianMatrix& m, const ScaledTolerance& tol) {
  const EigenDecomposition e = eig_hermitian(m);
  std::vector<double> mags(static_cast<std::size_t>(e.values.size()));
  double norm = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    mags[static_cast<std::size_t>(i)] = std::abs(e.values(i));
    norm = std::max(norm, std::abs(e.values(i)));
  }
  const std::vector<bool> zero = zero_mask(mags, tol.effective(norm));
  const auto count = static_cast<Eigen::Index>(std::count(zero.begin(), zero.end(), true));
  CMatrix basis(e.vectors.rows(), count);
  Eigen::Index c = 0;
  for (std::size_t i = 0; i < zero.size(); ++i) {
    if (zero[i]) basis.col(c++) = e.vectors.col(static_cast<Eigen::Index>(i));
  }
  return basis;
}

std::size_t numerical_rank(const HermitianMatrix& m, const ScaledTolerance& tol) {
  return m.dim() - static_cast<std::size_t>(kernel_basis(m, tol).cols());
}

PsdReport is_psd(const HermitianMatrix& m, const ScaledTolerance& tol) {
  const EigenDecomposition e = eig_hermitian(m);
  const double lmin = e.values(0);
  const double norm = std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
  const double t = tol.effective(norm);
  if (lmin > t) return {PsdVerdict::PositiveDefinite, lmin};
  if (lmin >= -t) return {PsdVerdict::PositiveSemidefiniteSingular, lmin};
  return {PsdVerdict::Indefinite, lmin};
}

double spectral_norm(const HermitianMatrix& m) {
  const EigenDecomposition e = eig_hermitian(m);
  return std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
}

double min_eigenvalue(const HermitianMatrix& m) { return eig_hermitian(m).values(0); }

HermitianMatrix psd_sqrt(const HermitianMatrix& m) {
  return spectral_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

HermitianMatrix inverse_sqrt(const HermitianMatrix& m) {
  const EigenDecomposition e = eig_hermitian(m);
  if (e.values(0) <= 0.0) throw Error(ErrorKind::RankDeficient, "inverse square root of a singular matrix");
  CMatrix scaled = e.vectors;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) scaled.col(j) /= std::sqrt(e.values(j));
  return HermitianMatrix::symmetrized(scaled * e.vectors.adjoint());
}

// ---------------------------------------------------------------------------
// Douglas lemma

CMatrix douglas_unitary(const CMatrix& gamma, const CMatrix& delta, const ScaledTolerance& tol) {
  if (gamma.rows() != delta.rows() || gamma.cols() != delta.cols()) {
    throw Error(ErrorKind::ArityMismatch, "Douglas factors must share shape");
  }
  const Eigen::Index r = gamma.rows();
  if (r > gamma.cols()) throw Error(ErrorKind::RankDeficient, "a factor with more rows than columns is not surjective");
  for (const CMatrix* f : {&gamma, &delta}) {
    Eigen::JacobiSVD<CMatrix> svd(*f);
    const RVector s = svd.singularValues();
    if (s(r - 1) <= tol.effective(s(0))) {
      throw Error(ErrorKind::RankDeficient, "Douglas factor is not surjective");
    }
  }
  const HermitianMatrix gg = HermitianMatrix::symmetrized(gamma.adjoint() * gamma);
  const HermitianMatrix dd = HermitianMatrix::symmetrized(delta.adjoint() * delta);
  const double mismatch = spectral_norm(gg - dd);
  if (mismatch > tol.effective(spectral_norm(dd))) {
    throw Error(ErrorKind::GramMismatch, "gamma* gamma differs from delta* delta by " + std::to_string(mismatch));
  }
  // Polar factor of gamma delta* = U (delta delta*), which equals gamma delta* (delta delta*)^-1.
  Eigen::JacobiSVD<CMatrix> svd(gamma * delta.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
  const double residual = (gamma - u * delta).norm();
  if (residual > tol.effective(gamma.norm()) * 10.0) {
    throw Error(ErrorKind::VerificationFailed, "Douglas unitary fails gamma = U delta by " + std::to_string(residual));
  }
  return u;
}

// ---------------------------------------------------------------------------
// Unitary equivalence

namespace {

struct WordTrace {
  Complex trace;
  std::size_t length;
};

// Traces of all words of length 1..len, in a fixed enumeration order.
std::vector<WordTrace> word_traces(const std::vector<CMatrix>& x, std::size_t len) {
  std::vector<WordTrace> out;
  const std::size_t g = x.size();
  std::vector<std::pair<CMatrix, std::size_t>> frontier;
  for (std::size_t i = 0; i < g; ++i) frontier.emplace_back(x[i], 1);
  // Depth-first keeps memory at len * g products.
  while (!frontier.empty()) {
    auto [w, l] = std::move(frontier.back());
    frontier.pop_back();
    out.push_back({w.trace(), l});
    if (l < len) {
      for (std::size_t i = 0; i < g; ++i) frontier.emplace_back(w * x[g - 1 - i], l + 1);
    }
  }
  return out;
}

std::size_t word_count(std::size_t g, std::size_t len) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (std::size_t l = 1; l <= len; ++l) {
    level *= g;
    total += level;
  }
  return total;
}

}  // namespace

bool unitarily_equivalent(const MatrixTuple& x, const MatrixTuple& y, const ScaledTolerance& tol,
                          const EquivalenceOptions& opts) {
  return unitarily_equivalent(x, y, nullptr, tol, opts);
}

bool unitarily_equivalent(const MatrixTuple& x, const MatrixTuple& y, CMatrix* witness,
                          const ScaledTolerance& tol, const EquivalenceOptions& opts) {
  if (x.level() != y.level() || x.g() != y.g()) {
    throw Error(ErrorKind::ArityMismatch, "unitary equivalence needs equal level and arity");
  }
  const std::size_t n = x.level();
  const std::size_t g = x.g();
  const double scale = std::max({1.0, x.norm(), y.norm()});
  std::vector<CMatrix> xs, ys;
  for (std::size_t i = 0; i < g; ++i) {
    xs.push_back(x[i].matrix() / scale);
    ys.push_back(y[i].matrix() / scale);
  }

  std::size_t len = opts.word_length == 0 ? 2 * n * n : opts.word_length;
  while (len > 1 && word_count(g, len) > opts.max_words) --len;
  const std::vector<WordTrace> tx = word_traces(xs, len);
  const std::vector<WordTrace> ty = word_traces(ys, len);
  const double base = tol.effective(1.0) * 10.0 * static_cast<double>(n);
  for (std::size_t w = 0; w < tx.size(); ++w) {
    if (std::abs(tx[w].trace - ty[w].trace) > base * static_cast<double>(tx[w].length)) return false;
  }

  // Witness from the intertwiner space {T : X_i T = T Y_i}.
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix system(static_cast<Eigen::Index>(g) * nn * nn, nn * nn);
  const CMatrix id = CMatrix::Identity(nn, nn);
  for (std::size_t i = 0; i < g; ++i) {
    system.block(static_cast<Eigen::Index>(i) * nn * nn, 0, nn * nn, nn * nn) =
        kron(id, xs[i]) - kron(ys[i].transpose(), id);
  }
  Eigen::JacobiSVD<CMatrix> svd(system, Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  const double threshold = std::max(base, tol.effective(s(0)) * 10.0);
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index j = 0; j < nn * nn; ++j) {
    if (j >= s.size() || s(j) <= threshold) null_cols.push_back(j);
  }
  if (null_cols.empty()) null_cols.push_back(nn * nn - 1);

  const double verify = base * std::sqrt(static_cast<double>(n));
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(opts.witness_restarts, 1); ++attempt) {
    CVector t = CVector::Zero(nn * nn);
    for (Eigen::Index j : null_cols) {
      const Complex c = attempt == 0 && null_cols.size() == 1 ? Complex(1.0) : Complex(normal(rng), normal(rng));
      t += c * svd.matrixV().col(j);
    }
    const CMatrix tm = Eigen::Map<const CMatrix>(t.data(), nn, nn);
    Eigen::JacobiSVD<CMatrix> polar(tm, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector ps = polar.singularValues();
    if (ps(nn - 1) <= 1e-8 * ps(0)) continue;
    const CMatrix u = polar.matrixU() * polar.matrixV().adjoint();
    double err = 0.0;
    for (std::size_t i = 0; i < g; ++i) err = std::max(err, (u.adjoint() * xs[i] * u - ys[i]).norm());
    if (err <= verify) {
      if (witness != nullptr) *witness = u;
      return true;
    }
  }
  throw Error(ErrorKind::Inconclusive, "trace invariants agree but no unitary witness was found");
}

// ---------------------------------------------------------------------------
// Real coordinates

RVector to_real(const HermitianMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  RVector v(n * n);
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < n; ++a) v(k++) = m.matrix()(a, a).real();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      v(k++) = r2 * m.matrix()(a, b).real();
      v(k++) = r2 * m.matrix()(a, b).imag();
    }
  }
  return v;
}

HermitianMatrix hermitian_from_real(const Eigen::Ref<const RVector>& v, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  if (v.size() != nn * nn) throw Error(ErrorKind::ArityMismatch, "real vector has wrong length");
  CMatrix m = CMatrix::Zero(nn, nn);
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < nn; ++a) m(a, a) = v(k++);
  for (Eigen::Index a = 0; a < nn; ++a) {
    for (Eigen::Index b = a + 1; b < nn; ++b) {
      const double re = v(k++) / r2;
      const double im = v(k++) / r2;
      m(a, b) = Complex(re, im);
      m(b, a) = Complex(re, -im);
    }
  }
  return HermitianMatrix::symmetrized(m);
}

RVector to_real(const MatrixTuple& x) {
  const auto d = static_cast<Eigen::Index>(x.level() * x.level());
  RVector v(d * static_cast<Eigen::Index>(x.g()));
  for (std::size_t i = 0; i < x.g(); ++i) v.segment(static_cast<Eigen::Index>(i) * d, d) = to_real(x[i]);
  return v;
}

MatrixTuple tuple_from_real(const Eigen::Ref<const RVector>& v, std::size_t n, std::size_t g) {
  const auto d = static_cast<Eigen::Index>(n * n);
  if (v.size() != d * static_cast<Eigen::Index>(g)) throw Error(ErrorKind::ArityMismatch, "real vector has wrong length");
  std::vector<HermitianMatrix> c;
  for (std::size_t i = 0; i < g; ++i) c.push_back(hermitian_from_real(v.segment(static_cast<Eigen::Index>(i) * d, d), n));
  return MatrixTuple(std::move(c));
}

namespace {

template <class Matrix>
Matrix nullspace_from_svd(const Matrix& a, const ScaledTolerance& tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  std::vector<double> mags(static_cast<std::size_t>(cols), 0.0);
  for (Eigen::Index j = 0; j < s.size(); ++j) mags[static_cast<std::size_t>(j)] = s(j);
  const double norm = s.size() > 0 ? s(0) : 0.0;
  const std::vector<bool> zero = zero_mask(mags, tol.effective(norm));
  const auto count = static_cast<Eigen::Index>(std::count(zero.begin(), zero.end(), true));
  Matrix basis(cols, count);
  Eigen::Index c = 0;
  for (std::size_t j = 0; j < zero.size(); ++j) {
    if (zero[j]) basis.col(c++) = svd.matrixV().col(static_cast<Eigen::Index>(j));
  }
  return basis;
}

}  // namespace

RMatrix real_nullspace(const RMatrix& a, const ScaledTolerance& tol) { return nullspace_from_svd(a, tol); }

CMatrix complex_nullspace(const CMatrix& a, const ScaledTolerance& tol) { return nullspace_from_svd(a, tol); }

}  // namespace mcs
