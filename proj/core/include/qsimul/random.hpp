#pragma once

#include <cstdint>
#include <random>

#include "qsimul/observable.hpp"

namespace qsimul {

using Rng = std::mt19937_64;

/// Splitmix64 combination of a base seed and an index; used to give each
/// instance of a parallel sweep its own deterministic stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

CMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed unitary from the QR decomposition of a complex Gaussian
/// matrix with the phases of the R diagonal fixed.
CMatrix random_unitary(Rng& rng, Eigen::Index dim);

/// Random Hermitian matrix scaled to unit max-norm.
CMatrix random_hermitian(Rng& rng, Eigen::Index dim);

PureState random_state(Rng& rng, Eigen::Index dim);

Observable random_observable(Rng& rng, Eigen::Index dim);

/// Random observable with the given spectral values (repetitions produce
/// degenerate eigenspaces) in a Haar-random eigenbasis.
Observable random_observable_with_values(Rng& rng, Eigen::Index dim,
                                         const std::vector<double>& values);

/// Distinct, well-separated spectral values for synthetic observables.
std::vector<double> random_separated_values(Rng& rng, int count,
                                            double min_gap = 0.25);

}  // namespace qsimul
