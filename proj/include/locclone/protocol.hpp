// protocol.hpp
// Branch-by-branch execution of the cloning protocol and whole-family
// verification.
//
// Register layout for a family with p parties: subsystems 0..p-1 hold the
// unknown state (party i's qudit is subsystem i), subsystems p..2p-1 hold
// the resource state (party i's resource qudit is subsystem p+i). Fidelity
// is always computed against (unknown registers, resource registers) =
// member (x) member in that order.

#pragma once

#include <vector>

#include "locclone/operators.hpp"

namespace locclone {

inline constexpr double kPerfectFidelityTol = 1e-9;   // branch counts as perfect above 1 - this
inline constexpr double kProbabilitySumTol = 1e-10;   // per-member total probability

/// One measurement branch: outcome index, its probability, the normalized
/// post-correction state, and its fidelity against the two-copy target.
struct BranchOutcome {
  int k = 0;
  double probability = 0.0;
  PureState post_state;
  double fidelity = 0.0;
};

/// All d branches for one family member.
struct ProtocolReport {
  std::vector<int> member;
  std::vector<BranchOutcome> branches;  // k ascending
  double total_probability = 0.0;
  double min_fidelity = 0.0;
};

/// Per-member reports plus the overall verdict.
struct FamilyReport {
  std::vector<ProtocolReport> reports;  // member order as listed in the family
  bool passed = false;
};

struct PovmCheck {
  bool passed = false;
  double residual = 0.0;
};

/// max |sum_k M_k' M_k - I|; passes at 1e-12.
inline PovmCheck verify_povm(const CloneFamily& family) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(family.d, family.d);
  for (int k = 0; k < family.d; ++k) {
    const Eigen::MatrixXcd& m = measurement_operator(family, k).matrix();
    sum += m.adjoint() * m;
  }
  const double residual =
      (sum - Eigen::MatrixXcd::Identity(family.d, family.d)).cwiseAbs().maxCoeff();
  return {residual <= 1e-12, residual};
}

/// Runs branch k of the protocol with an arbitrary unknown input state
/// (which need not be a member of the family). The fidelity is reported
/// against unknown (x) unknown, so a non-member input exposes imperfect
/// cloning directly.
inline BranchOutcome run_branch_state(const CloneFamily& family, const PureState& unknown,
                                      int k) {
  if (k < 0 || k >= family.d) throw std::invalid_argument("branch outcome out of range");
  const std::vector<int> party_dims(static_cast<std::size_t>(family.parties), family.d);
  if (unknown.dims() != party_dims) {
    throw std::invalid_argument("unknown state does not match the family's registers");
  }

  const int p = family.parties;
  PureState joint = tensor(unknown, mes_state(family.d, p));

  // Every party entangles its unknown qudit (control) with its resource qudit.
  const Operator u = cloning_unitary(family.d);
  for (int party = 0; party < p; ++party) {
    joint = apply_local(u, joint, {party, p + party});
  }

  // Alice measures her resource qudit; everyone applies the correction P_{-k}.
  joint = apply_local(measurement_operator(family, k), joint, {p});
  const Operator correction = shift_operator(family.d, mod_d(-k, family.d));
  for (int party = 0; party < p; ++party) {
    joint = apply_local(correction, joint, {p + party});
  }

  BranchOutcome out{k, joint.squared_norm(), joint.renormalized(), 0.0};
  out.fidelity = fidelity(out.post_state, tensor(unknown, unknown));
  return out;
}

inline BranchOutcome run_branch(const CloneFamily& family, const std::vector<int>& member,
                                int k) {
  return run_branch_state(family, family_state(family, member), k);
}

/// Runs all d branches for one member.
inline ProtocolReport run_protocol(const CloneFamily& family, const std::vector<int>& member) {
  ProtocolReport report;
  report.member = member;
  const PureState unknown = family_state(family, member);
  report.min_fidelity = 1.0;
  for (int k = 0; k < family.d; ++k) {
    BranchOutcome branch = run_branch_state(family, unknown, k);
    report.total_probability += branch.probability;
    report.min_fidelity = std::min(report.min_fidelity, branch.fidelity);
    report.branches.push_back(std::move(branch));
  }
  return report;
}

/// Runs every member of the family. Passes iff each branch of each member
/// reaches fidelity >= 1 - 1e-9 and each member's branch probabilities sum
/// to 1 within 1e-10.
inline FamilyReport verify_family(const CloneFamily& family) {
  std::size_t joint_dim = 1;
  for (int i = 0; i < 2 * family.parties; ++i) {
    joint_dim *= static_cast<std::size_t>(family.d);
    if (joint_dim > kMaxHilbertDim) {
      throw std::invalid_argument("protocol state exceeds the Hilbert dimension cap");
    }
  }

  FamilyReport out;
  out.passed = true;
  for (const auto& member : family.members) {
    ProtocolReport report = run_protocol(family, member);
    if (report.min_fidelity < 1.0 - kPerfectFidelityTol ||
        std::abs(report.total_probability - 1.0) > kProbabilitySumTol) {
      out.passed = false;
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

}  // namespace locclone
