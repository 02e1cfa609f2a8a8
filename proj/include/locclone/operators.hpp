// operators.hpp
// Constructors for the named operators and states of the cloning protocol:
// cyclic shift and clock operators, the discrete Fourier matrix, maximally
// entangled resource states, the two-register cloning unitary, diagonal
// measurement operators, and the shift-structured clonable family.
//
// Phase convention: omega = exp(+2*pi*i/d) throughout.

#pragma once

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "locclone/core.hpp"

namespace locclone {

inline int mod_d(int x, int d) {
  const int r = x % d;
  return r < 0 ? r + d : r;
}

inline cxd root_of_unity(int d, long long exponent) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent % d) / d;
  return {std::cos(angle), std::sin(angle)};
}

/// Cyclic shift |j> -> |j+i mod d>.
inline Operator shift_operator(int d, int i) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const int s = mod_d(i, d);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) m((j + s) % d, j) = 1.0;
  return Operator::unitary(std::move(m));
}

/// Diagonal clock operator diag(omega^{j*k}) for k = 0..d-1.
inline Operator clock_operator(int d, int j) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const int jj = mod_d(j, d);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = root_of_unity(d, static_cast<long long>(jj) * k);
  return Operator::unitary(std::move(m));
}

/// Discrete Fourier matrix F[m][k] = omega^{m*k} / sqrt(d).
inline Operator fourier_operator(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  Eigen::MatrixXcd f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < d; ++m) {
    for (int k = 0; k < d; ++k) {
      f(m, k) = scale * root_of_unity(d, static_cast<long long>(m) * k);
    }
  }
  return Operator::unitary(std::move(f));
}

/// (1/sqrt(d)) sum_l |l>^(x parties); the shared resource state.
inline PureState mes_state(int d, int parties) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (parties < 2) throw std::invalid_argument("at least two parties required");
  std::vector<int> dims(static_cast<std::size_t>(parties), d);
  detail::check_dims(dims);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::product(dims)));
  const auto str = detail::strides(dims);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int l = 0; l < d; ++l) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) idx += static_cast<std::size_t>(l) * str[p];
    amps(static_cast<Eigen::Index>(idx)) = a;
  }
  return PureState::normalized(std::move(dims), std::move(amps));
}

/// Two-register entangling gate sum_m |m><m| (x) P_m. The first factor
/// (control) is the unknown-state qudit, the second (target) the resource
/// qudit: U|m>|l> = |m>|l+m mod d>.
inline Operator cloning_unitary(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m) {
    for (int l = 0; l < d; ++l) {
      u(m * d + (l + m) % d, m * d + l) = 1.0;
    }
  }
  return Operator::unitary(std::move(u));
}

/// A family of shift-structured states sharing Schmidt coefficients alpha:
/// member (s_1, ..., s_{parties-1}) is sum_k alpha_k |k> P_{s_1}|k> ... .
/// All alpha must be strictly positive with sum of squares 1; members are
/// pairwise distinct shift assignments.
struct CloneFamily {
  int d = 0;
  int parties = 2;
  std::vector<double> alpha;
  std::vector<std::vector<int>> members;

  CloneFamily(int d_, int parties_, std::vector<double> alpha_,
              std::vector<std::vector<int>> members_)
      : d(d_), parties(parties_), alpha(std::move(alpha_)), members(std::move(members_)) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    if (parties < 2) throw std::invalid_argument("at least two parties required");
    if (alpha.size() != static_cast<std::size_t>(d)) {
      throw std::invalid_argument("alpha must list d coefficients");
    }
    double sum = 0.0;
    for (double a : alpha) {
      if (!(a > 0.0)) throw std::invalid_argument("alpha coefficients must be strictly positive");
      sum += a * a;
    }
    if (std::abs(sum - 1.0) > kNormTol) {
      throw std::invalid_argument("alpha squared coefficients must sum to 1");
    }
    double cap = 1.0;
    for (int p = 1; p < parties; ++p) cap *= d;
    if (members.empty() || static_cast<double>(members.size()) > cap) {
      throw std::invalid_argument("family size must be in [1, d^(parties-1)]");
    }
    std::set<std::vector<int>> distinct;
    for (const auto& m : members) {
      if (m.size() != static_cast<std::size_t>(parties - 1)) {
        throw std::invalid_argument("each member needs one shift per party beyond the first");
      }
      for (int s : m) {
        if (s < 0 || s >= d) throw std::invalid_argument("shift index out of range");
      }
      if (!distinct.insert(m).second) {
        throw std::invalid_argument("family members must be pairwise distinct");
      }
    }
  }
};

/// State of one family member: sum_k alpha_k |k> |k+s_1> ... |k+s_{p-1}>.
inline PureState family_state(const CloneFamily& family, const std::vector<int>& member) {
  if (member.size() != static_cast<std::size_t>(family.parties - 1)) {
    throw std::invalid_argument("member arity must be parties - 1");
  }
  for (int s : member) {
    if (s < 0 || s >= family.d) throw std::invalid_argument("shift index out of range");
  }
  std::vector<int> dims(static_cast<std::size_t>(family.parties), family.d);
  const auto str = detail::strides(dims);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::product(dims)));
  for (int k = 0; k < family.d; ++k) {
    std::size_t idx = static_cast<std::size_t>(k) * str[0];
    for (std::size_t p = 0; p < member.size(); ++p) {
      idx += static_cast<std::size_t>((k + member[p]) % family.d) * str[p + 1];
    }
    amps(static_cast<Eigen::Index>(idx)) = family.alpha[static_cast<std::size_t>(k)];
  }
  return PureState::normalized(std::move(dims), std::move(amps));
}

/// Diagonal measurement operator with entry alpha_{(j-k) mod d} at slot j;
/// the d outcomes form a complete POVM.
inline Operator measurement_operator(const CloneFamily& family, int k) {
  if (k < 0 || k >= family.d) throw std::invalid_argument("outcome index out of range");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(family.d, family.d);
  for (int j = 0; j < family.d; ++j) {
    m(j, j) = family.alpha[static_cast<std::size_t>(mod_d(j - k, family.d))];
  }
  return Operator::general(std::move(m));
}

}  // namespace locclone
