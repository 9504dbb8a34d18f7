#include "qsimul/random.hpp"

#include <algorithm>
#include <cmath>

namespace qsimul {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

CMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  const CMatrix g = random_gaussian(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

CMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
  CMatrix g = random_gaussian(rng, dim, dim);
  CMatrix h = (g + g.adjoint().eval()) / 2.0;
  const double scale = max_abs(h);
  if (scale > 0) h /= scale;
  return h;
}

PureState random_state(Rng& rng, Eigen::Index dim) {
  return PureState::normalized(random_gaussian(rng, dim, 1).col(0));
}

Observable random_observable(Rng& rng, Eigen::Index dim) {
  return spectralize(random_hermitian(rng, dim));
}

Observable random_observable_with_values(Rng& rng, Eigen::Index dim,
                                         const std::vector<double>& values) {
  if (static_cast<Eigen::Index>(values.size()) != dim) {
    throw InvalidValue("random_observable_with_values: need one value per axis");
  }
  const CMatrix u = random_unitary(rng, dim);
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m += values[i] * (u.col(i) * u.col(i).adjoint());
  }
  m = (m + m.adjoint().eval()) / 2.0;
  return spectralize(m);
}

std::vector<double> random_separated_values(Rng& rng, int count,
                                            double min_gap) {
  // Jittered grid: spacing 1.5 * min_gap, jitter at most min_gap / 4 each,
  // so neighbors stay at least min_gap apart.
  std::uniform_real_distribution<double> jitter(-min_gap / 4, min_gap / 4);
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back((i - (count - 1) / 2.0) * 1.5 * min_gap + jitter(rng));
  }
  return out;
}

}  // namespace qsimul
