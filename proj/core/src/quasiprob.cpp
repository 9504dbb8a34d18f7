#include "qsimul/quasiprob.hpp"

#include <cmath>

namespace qsimul {

Complex QuasiDistribution::sum() const {
  Complex s = 0;
  for (const auto& [k, v] : entries_) s += v;
  return s;
}

Complex QuasiDistribution::entry(double a, double b, double match_tol) const {
  for (const auto& [k, v] : entries_) {
    if (std::abs(k.first - a) <= match_tol &&
        std::abs(k.second - b) <= match_tol) {
      return v;
    }
  }
  return 0.0;
}

double QuasiDistribution::max_abs_offdiagonal(double match_tol) const {
  double worst = 0;
  for (const auto& [k, v] : entries_) {
    if (std::abs(k.first - k.second) > match_tol) {
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

Complex QuasiDistribution::diagonal_sum(double match_tol) const {
  Complex s = 0;
  for (const auto& [k, v] : entries_) {
    if (std::abs(k.first - k.second) <= match_tol) s += v;
  }
  return s;
}

std::map<double, Complex> QuasiDistribution::marginal_first() const {
  std::map<double, Complex> out;
  for (const auto& [k, v] : entries_) out[k.first] += v;
  return out;
}

std::map<double, Complex> QuasiDistribution::marginal_second() const {
  std::map<double, Complex> out;
  for (const auto& [k, v] : entries_) out[k.second] += v;
  return out;
}

QuasiDistribution strong_jqpd(const Observable& a, const Observable& b,
                              const PureState& psi) {
  if (a.dim() != b.dim() || a.dim() != psi.dim()) {
    throw DimensionMismatch("strong_jqpd: dimension mismatch");
  }
  std::map<QuasiDistribution::Key, Complex> entries;
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const Projection meet = projection_meet(ca.projection, cb.projection);
      double p = expectation(meet.matrix(), psi).real();
      if (p < -1e-10) {
        throw InvalidValue("strong_jqpd: negative entry beyond roundoff");
      }
      entries[{ca.value, cb.value}] = std::max(p, 0.0);
    }
  }
  return QuasiDistribution(Flavor::Strong, std::move(entries));
}

QuasiDistribution weak_jqpd(const Observable& a, const Observable& b,
                            const PureState& psi) {
  if (a.dim() != b.dim() || a.dim() != psi.dim()) {
    throw DimensionMismatch("weak_jqpd: dimension mismatch");
  }
  std::map<QuasiDistribution::Key, Complex> entries;
  for (const auto& ca : a.spectrum()) {
    const CVector ea_psi = ca.projection.matrix() * psi.vector();
    for (const auto& cb : b.spectrum()) {
      entries[{ca.value, cb.value}] =
          psi.vector().dot(cb.projection.matrix() * ea_psi);
    }
  }
  return QuasiDistribution(Flavor::Weak, std::move(entries));
}

bool is_weak_jpd(const QuasiDistribution& q) {
  if (q.flavor() != Flavor::Weak) {
    throw PreconditionUnmet("is_weak_jpd: expects the weak flavor");
  }
  for (const auto& [k, v] : q.entries()) {
    if (std::abs(v.imag()) > 1e-9 || v.real() < -1e-9) return false;
  }
  return true;
}

std::map<double, Complex> conditional_qp(const Observable& a,
                                         const Observable& b,
                                         const PureState& psi, double given_b,
                                         Flavor flavor) {
  const double pb = born_distribution(b, psi).probability(given_b);
  if (pb <= tol::condition) {
    throw ZeroConditionProbability("conditional_qp: Pr{B=b} vanishes");
  }
  const QuasiDistribution joint = flavor == Flavor::Strong
                                      ? strong_jqpd(a, b, psi)
                                      : weak_jqpd(a, b, psi);
  std::map<double, Complex> out;
  for (const auto& ca : a.spectrum()) {
    out[ca.value] = joint.entry(ca.value, given_b) / pb;
  }
  return out;
}

Complex conditional_qe(const Observable& a, const Observable& b,
                       const PureState& psi, double given_b, Flavor flavor) {
  Complex s = 0;
  for (const auto& [x, p] : conditional_qp(a, b, psi, given_b, flavor)) {
    s += x * p;
  }
  return s;
}

WeakValue weak_value(const Observable& a, const PureState& psi_i,
                     const PureState& psi_f) {
  return weak_value(a.matrix(), psi_i, psi_f);
}

WeakValue weak_value(const CMatrix& op, const PureState& psi_i,
                     const PureState& psi_f) {
  if (op.rows() != psi_i.dim() || psi_i.dim() != psi_f.dim()) {
    throw DimensionMismatch("weak_value: dimension mismatch");
  }
  const Complex overlap = psi_f.vector().dot(psi_i.vector());
  if (std::abs(overlap) <= tol::overlap) {
    throw OrthogonalSelection("weak_value: pre/postselection overlap vanishes");
  }
  const Complex numerator = psi_f.vector().dot(op * psi_i.vector());
  return WeakValue{numerator / overlap, psi_i, psi_f};
}

double steinberg_check(const Observable& a, const Observable& b,
                       const PureState& psi, double given_b) {
  const auto idx = b.value_index(given_b);
  if (!idx) {
    throw PreconditionUnmet("steinberg_check: given_b is not a spectral value");
  }
  const Projection& eb = b.spectrum()[*idx].projection;
  if (eb.rank() != 1) {
    throw DegeneratePostselection(
        "steinberg_check: E^B(b) has rank above one");
  }
  const PureState post = PureState::normalized(eb.range_basis().col(0));
  const Complex lhs = weak_value(a, psi, post).value;
  const Complex rhs = conditional_qe(a, b, psi, given_b, Flavor::Weak);
  return std::abs(lhs - rhs);
}

}  // namespace qsimul
