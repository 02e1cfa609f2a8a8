// core.hpp
// Dense multi-qudit pure states and operators: tensor composition, local
// operator application, inner products, Schmidt analysis, partial trace.
//
// Amplitude indexing is row-major with subsystem 0 as the most significant
// digit: for dims (d0, d1, ..., dn-1) the basis state |a0 a1 ... an-1> sits
// at index a0*(d1*...*dn-1) + a1*(d2*...*dn-1) + ... + an-1. Every function
// in this library uses that convention.

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace locclone {

using cxd = Eigen::dcomplex;

// Tolerances shared across the library.
inline constexpr double kNormTol = 1e-12;        // |<psi|psi> - 1|
inline constexpr double kUnitaryTol = 1e-12;     // max |O'O - I|
inline constexpr double kSchmidtRankTol = 1e-9;  // absolute, on coefficients
inline constexpr std::size_t kMaxHilbertDim = 65536;

namespace detail {

inline std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

// stride[k] = product of dims after k; index = sum digit[k]*stride[k]
inline std::vector<std::size_t> strides(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    s[k - 1] = s[k] * static_cast<std::size_t>(dims[k]);
  }
  return s;
}

inline void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("state needs at least one subsystem");
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("subsystem dimension must be >= 2");
  }
  if (product(dims) > kMaxHilbertDim) {
    throw std::invalid_argument("total Hilbert dimension exceeds cap " +
                                std::to_string(kMaxHilbertDim));
  }
}

}  // namespace detail

/// Dense operator on one or more qudits. Construct via general() or, for
/// operators that must be unitary, via unitary() which verifies
/// max|O'O - I| <= 1e-12 and records the flag.
class Operator {
 public:
  static Operator general(Eigen::MatrixXcd entries) {
    return Operator(std::move(entries), false);
  }

  static Operator unitary(Eigen::MatrixXcd entries) {
    if (entries.rows() != entries.cols()) {
      throw std::invalid_argument("unitary operator must be square");
    }
    const Eigen::MatrixXcd gram = entries.adjoint() * entries;
    const double residual =
        (gram - Eigen::MatrixXcd::Identity(entries.cols(), entries.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (residual > kUnitaryTol) {
      throw std::invalid_argument("operator fails unitarity check, residual " +
                                  std::to_string(residual));
    }
    return Operator(std::move(entries), true);
  }

  static Operator identity(int dim) {
    return Operator(Eigen::MatrixXcd::Identity(dim, dim), true);
  }

  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  bool unitary_flag() const { return unitary_; }

  Operator adjoint() const { return Operator(entries_.adjoint(), unitary_); }

  Operator operator*(const Operator& rhs) const {
    if (cols() != rhs.rows()) throw std::invalid_argument("operator product shape mismatch");
    return Operator(entries_ * rhs.entries_, unitary_ && rhs.unitary_);
  }

 private:
  Operator(Eigen::MatrixXcd entries, bool unitary)
      : entries_(std::move(entries)), unitary_(unitary) {
    if (entries_.rows() == 0 || entries_.cols() == 0) {
      throw std::invalid_argument("operator must be non-empty");
    }
  }

  Eigen::MatrixXcd entries_;
  bool unitary_;
};

/// Pure state of a list of qudits. States labeled normalized are checked on
/// construction; unnormalized intermediates (e.g. post-measurement branches)
/// are built with raw() and carry normalized() == false.
class PureState {
 public:
  static PureState normalized(std::vector<int> dims, Eigen::VectorXcd amplitudes) {
    PureState s = raw(std::move(dims), std::move(amplitudes));
    if (std::abs(s.squared_norm() - 1.0) > kNormTol) {
      throw std::invalid_argument("state labeled normalized has squared norm " +
                                  std::to_string(s.squared_norm()));
    }
    s.normalized_ = true;
    return s;
  }

  static PureState raw(std::vector<int> dims, Eigen::VectorXcd amplitudes) {
    detail::check_dims(dims);
    if (static_cast<std::size_t>(amplitudes.size()) != detail::product(dims)) {
      throw std::invalid_argument("amplitude vector length does not match dims");
    }
    return PureState(std::move(dims), std::move(amplitudes));
  }

  /// Computational basis state |digits[0] digits[1] ...>.
  static PureState basis(std::vector<int> dims, const std::vector<int>& digits) {
    detail::check_dims(dims);
    if (digits.size() != dims.size()) {
      throw std::invalid_argument("one digit per subsystem required");
    }
    const auto str = detail::strides(dims);
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (digits[k] < 0 || digits[k] >= dims[k]) {
        throw std::invalid_argument("basis digit out of range");
      }
      index += static_cast<std::size_t>(digits[k]) * str[k];
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::product(dims)));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    PureState s(std::move(dims), std::move(amps));
    s.normalized_ = true;
    return s;
  }

  const std::vector<int>& dims() const { return dims_; }
  std::size_t subsystem_count() const { return dims_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  cxd amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  bool normalized() const { return normalized_; }

  double squared_norm() const { return amplitudes_.squaredNorm(); }
  double norm() const { return amplitudes_.norm(); }

  /// Rescaled copy with unit norm (fails on the zero vector).
  PureState renormalized() const {
    const double n = norm();
    if (n < 1e-300) throw std::invalid_argument("cannot normalize zero state");
    PureState s(dims_, amplitudes_ / n);
    s.normalized_ = true;
    return s;
  }

 private:
  PureState(std::vector<int> dims, Eigen::VectorXcd amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {}

  std::vector<int> dims_;
  Eigen::VectorXcd amplitudes_;
  bool normalized_ = false;
};

/// Schmidt form across a bipartition: state = sum_k c_k |l_k>|r_k> with the
/// cut listing the subsystems of the left side (ascending). The right side is
/// the complement, also in ascending subsystem order.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;  // singular values, descending
  Eigen::MatrixXcd left_basis;   // orthonormal columns
  Eigen::MatrixXcd right_basis;  // orthonormal columns
  std::vector<int> cut;
  std::vector<int> dims;

  int rank(double tol = kSchmidtRankTol) const {
    int r = 0;
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      if (coefficients(k) > tol) ++r;
    }
    return r;
  }

  PureState reconstruct() const;
};

namespace detail {

// Validates a subsystem index list: in range, no duplicates.
inline void check_targets(const std::vector<int>& targets, std::size_t subsystems) {
  if (targets.empty()) throw std::invalid_argument("target list is empty");
  std::vector<int> seen(subsystems, 0);
  for (int t : targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= subsystems) {
      throw std::invalid_argument("subsystem index out of range");
    }
    if (seen[t]++) throw std::invalid_argument("duplicate subsystem index");
  }
}

// Splits the dims into (cut, complement) index lists, both ascending.
inline std::pair<std::vector<int>, std::vector<int>> split_cut(
    const std::vector<int>& cut, std::size_t subsystems) {
  check_targets(cut, subsystems);
  std::vector<int> left = cut;
  std::sort(left.begin(), left.end());
  std::vector<int> right;
  std::vector<char> in_cut(subsystems, 0);
  for (int c : left) in_cut[c] = 1;
  for (std::size_t k = 0; k < subsystems; ++k) {
    if (!in_cut[k]) right.push_back(static_cast<int>(k));
  }
  return {left, right};
}

// Reshapes amplitudes into a (left x right) matrix for the given ascending
// index sets. Row index runs row-major over the left subsystems.
inline Eigen::MatrixXcd reshape_for_cut(const PureState& state,
                                        const std::vector<int>& left,
                                        const std::vector<int>& right) {
  const auto& dims = state.dims();
  const auto str = strides(dims);
  std::size_t ld = 1, rd = 1;
  for (int k : left) ld *= static_cast<std::size_t>(dims[k]);
  for (int k : right) rd *= static_cast<std::size_t>(dims[k]);

  Eigen::MatrixXcd m(static_cast<Eigen::Index>(ld), static_cast<Eigen::Index>(rd));
  const std::size_t total = state.dim();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t l = 0, r = 0;
    for (int k : left) {
      const std::size_t digit = (i / str[k]) % static_cast<std::size_t>(dims[k]);
      l = l * static_cast<std::size_t>(dims[k]) + digit;
    }
    for (int k : right) {
      const std::size_t digit = (i / str[k]) % static_cast<std::size_t>(dims[k]);
      r = r * static_cast<std::size_t>(dims[k]) + digit;
    }
    m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = state.amplitude(i);
  }
  return m;
}

}  // namespace detail

/// Kronecker product of two states; dims concatenate, norms multiply.
inline PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  detail::check_dims(dims);

  Eigen::VectorXcd amps(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    amps.segment(static_cast<Eigen::Index>(i * b.dim()),
                 static_cast<Eigen::Index>(b.dim())) = a.amplitude(i) * b.amplitudes();
  }
  PureState out = PureState::raw(std::move(dims), std::move(amps));
  return (a.normalized() && b.normalized()) ? out.renormalized() : out;
}

/// Applies op to the listed subsystems (identity elsewhere). The operator's
/// own index space is row-major over the targets in the order given. The
/// output is NOT renormalized: measurement operators shrink the norm.
inline PureState apply_local(const Operator& op, const PureState& state,
                             const std::vector<int>& targets) {
  detail::check_targets(targets, state.subsystem_count());
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("apply_local requires a square operator");
  }
  const auto& dims = state.dims();
  std::size_t target_dim = 1;
  for (int t : targets) target_dim *= static_cast<std::size_t>(dims[t]);
  if (static_cast<std::size_t>(op.cols()) != target_dim) {
    throw std::invalid_argument("operator dimension does not match target subsystems");
  }

  const auto str = detail::strides(dims);

  // Offsets of every target configuration relative to a context base index.
  std::vector<std::size_t> offsets(target_dim);
  for (std::size_t t = 0; t < target_dim; ++t) {
    std::size_t rem = t, off = 0;
    for (std::size_t p = targets.size(); p-- > 0;) {
      const auto d = static_cast<std::size_t>(dims[targets[p]]);
      off += (rem % d) * str[targets[p]];
      rem /= d;
    }
    offsets[t] = off;
  }

  std::vector<char> is_target(dims.size(), 0);
  for (int t : targets) is_target[t] = 1;

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(state.dim()));
  Eigen::VectorXcd in_block(static_cast<Eigen::Index>(target_dim));
  const std::size_t total = state.dim();
  for (std::size_t base = 0; base < total; ++base) {
    // base enumerates context indices: all target digits zero
    bool context = true;
    for (std::size_t k = 0; k < dims.size() && context; ++k) {
      if (is_target[k] && (base / str[k]) % static_cast<std::size_t>(dims[k]) != 0) {
        context = false;
      }
    }
    if (!context) continue;
    for (std::size_t t = 0; t < target_dim; ++t) {
      in_block(static_cast<Eigen::Index>(t)) = state.amplitude(base + offsets[t]);
    }
    const Eigen::VectorXcd out_block = op.matrix() * in_block;
    for (std::size_t t = 0; t < target_dim; ++t) {
      out(static_cast<Eigen::Index>(base + offsets[t])) = out_block(static_cast<Eigen::Index>(t));
    }
  }
  return PureState::raw(dims, std::move(out));
}

/// <a|b>, conjugate-linear in the first argument.
inline cxd inner_product(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("inner_product: dims mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2 for normalized states; global-phase invariant.
inline double fidelity(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("fidelity: dims mismatch");
  if (!a.normalized() || !b.normalized()) {
    throw std::invalid_argument("fidelity requires normalized states");
  }
  return std::norm(inner_product(a, b));
}

/// Schmidt decomposition across the given cut (subsystem indices of the left
/// side). Coefficients are the singular values of the reshaped amplitude
/// matrix, descending.
inline SchmidtDecomposition schmidt(const PureState& state, const std::vector<int>& cut) {
  if (!state.normalized()) throw std::invalid_argument("schmidt requires a normalized state");
  if (cut.size() >= state.subsystem_count()) {
    throw std::invalid_argument("cut must be a proper subset of the subsystems");
  }
  auto [left, right] = detail::split_cut(cut, state.subsystem_count());
  const Eigen::MatrixXcd m = detail::reshape_for_cut(state, left, right);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();  // state = sum_k s_k U.col(k) (x) conj(V).col(k)
  out.cut = left;
  out.dims = state.dims();
  return out;
}

inline PureState SchmidtDecomposition::reconstruct() const {
  auto [left, right] = detail::split_cut(cut, dims.size());
  const auto str = detail::strides(dims);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::product(dims)));

  // Walk every full index once and pick up its (l, r) component.
  const std::size_t total = detail::product(dims);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t l = 0, r = 0;
    for (int k : left) l = l * static_cast<std::size_t>(dims[k]) + (i / str[k]) % static_cast<std::size_t>(dims[k]);
    for (int k : right) r = r * static_cast<std::size_t>(dims[k]) + (i / str[k]) % static_cast<std::size_t>(dims[k]);
    cxd v = 0.0;
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      v += coefficients(k) * left_basis(static_cast<Eigen::Index>(l), k) *
           right_basis(static_cast<Eigen::Index>(r), k);
    }
    amps(static_cast<Eigen::Index>(i)) = v;
  }
  return PureState::raw(dims, std::move(amps));
}

/// Reduced density matrix over the kept subsystems (ascending order),
/// tracing out the rest. Positive semidefinite with unit trace.
inline Eigen::MatrixXcd reduced_density(const PureState& state, const std::vector<int>& keep) {
  if (!state.normalized()) throw std::invalid_argument("reduced_density requires a normalized state");
  if (keep.size() == state.subsystem_count()) {
    const Eigen::VectorXcd& a = state.amplitudes();
    return a * a.adjoint();
  }
  auto [kept, traced] = detail::split_cut(keep, state.subsystem_count());
  const Eigen::MatrixXcd m = detail::reshape_for_cut(state, kept, traced);
  return m * m.adjoint();
}

}  // namespace locclone
