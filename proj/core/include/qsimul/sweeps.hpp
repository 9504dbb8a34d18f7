#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsimul/random.hpp"
#include "qsimul/simul.hpp"

namespace qsimul {

/// Result of a randomized property suite. The contract for every kind is
/// violations == 0.
struct SweepResult {
  std::string kind;
  int count = 0;
  std::vector<int> dims;
  std::uint64_t seed = 0;
  int violations = 0;
  double worst_residual = 0;
};

/// Instance generators shared by the sweeps and the test suites. Every
/// generator is deterministic in the rng state.

/// A pair commuting in psi: psi is a superposition of common eigenvectors,
/// while the observables generically fail to commute elsewhere.
struct StatePair {
  Observable a;
  Observable b;
  PureState psi;
};
StatePair make_commute_in_state_instance(Rng& rng, Eigen::Index dim);

/// Globally commuting pair with a shared random eigenbasis.
StatePair make_global_commuting_instance(Rng& rng, Eigen::Index dim);

/// Block-diagonal pair commuting on the block holding psi and generically
/// non-commuting on the complement.
StatePair make_block_commuting_instance(Rng& rng, Eigen::Index block_dim,
                                        Eigen::Index other_dim);

/// Generic pair and state (almost surely not commuting in the state).
StatePair make_generic_instance(Rng& rng, Eigen::Index dim);

/// Perfectly correlated pair: common eigenvectors with common eigenvalues on
/// the support of psi, independent structure elsewhere.
StatePair make_perfectly_correlated_instance(Rng& rng, Eigen::Index dim);

/// Random simultaneous measuring process with a Haar interaction and random
/// total outcome maps, for uncertainty sweeps.
struct UupInstance {
  Observable a;
  Observable b;
  PureState psi;
  SimultaneousProcess process;
};
UupInstance make_uup_instance(Rng& rng, Eigen::Index system_dim,
                              Eigen::Index probe_dim);

/// Named suites. dims entries must lie in [2, 16].
SweepResult sweep_uup(int count, const std::vector<int>& dims,
                      std::uint64_t seed);
SweepResult sweep_gudder(int count, const std::vector<int>& dims,
                         std::uint64_t seed);
SweepResult sweep_idc(int count, const std::vector<int>& dims,
                      std::uint64_t seed);
SweepResult sweep_dim2(int count, const std::vector<int>& dims,
                       std::uint64_t seed);

SweepResult run_sweep(const std::string& kind, int count,
                      const std::vector<int>& dims, std::uint64_t seed);

}  // namespace qsimul
