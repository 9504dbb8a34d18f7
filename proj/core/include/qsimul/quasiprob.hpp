#pragma once

#include <map>
#include <utility>

#include "qsimul/observable.hpp"

namespace qsimul {

enum class Flavor { Strong, Weak };

/// Complex-valued map over outcome pairs (a, b).
///
/// Weak flavor: entry(a,b) = <psi| E^B(b) E^A(a) |psi>, always sums to 1.
/// Strong flavor: entry(a,b) = <psi| E^A(a) ^ E^B(b) |psi>, real nonnegative;
/// sums to 1 exactly when A and B commute in psi, otherwise the sum falls
/// short of 1.
class QuasiDistribution {
 public:
  using Key = std::pair<double, double>;

  QuasiDistribution(Flavor flavor, std::map<Key, Complex> entries)
      : flavor_(flavor), entries_(std::move(entries)) {}

  Flavor flavor() const { return flavor_; }
  const std::map<Key, Complex>& entries() const { return entries_; }
  Complex sum() const;
  Complex entry(double a, double b,
                double match_tol = tol::outcome_match) const;
  /// Max |entry| over pairs with |a - b| > match_tol.
  double max_abs_offdiagonal(double match_tol = tol::outcome_match) const;
  /// Sum of entries over pairs with |a - b| <= match_tol.
  Complex diagonal_sum(double match_tol = tol::outcome_match) const;
  std::map<double, Complex> marginal_first() const;
  std::map<double, Complex> marginal_second() const;

 private:
  Flavor flavor_;
  std::map<Key, Complex> entries_;
};

QuasiDistribution strong_jqpd(const Observable& a, const Observable& b,
                              const PureState& psi);

QuasiDistribution weak_jqpd(const Observable& a, const Observable& b,
                            const PureState& psi);

/// A weak quasidistribution is a genuine joint probability distribution when
/// every entry is real (within 1e-9) and nonnegative (within -1e-9).
bool is_weak_jpd(const QuasiDistribution& q);

/// Conditional quasiprobability of A given B = given_b, per flavor.
/// Throws ZeroConditionProbability when Pr{B=given_b} <= tol::condition.
std::map<double, Complex> conditional_qp(const Observable& a,
                                         const Observable& b,
                                         const PureState& psi, double given_b,
                                         Flavor flavor);

/// Conditional quasiexpectation sum_a a * conditional_qp(a).
Complex conditional_qe(const Observable& a, const Observable& b,
                       const PureState& psi, double given_b, Flavor flavor);

struct WeakValue {
  Complex value;
  PureState preselect;
  PureState postselect;
};

/// A_w = <psi_f| A |psi_i> / <psi_f|psi_i>.
/// Throws OrthogonalSelection when |<psi_f|psi_i>| <= tol::overlap.
WeakValue weak_value(const Observable& a, const PureState& psi_i,
                     const PureState& psi_f);
WeakValue weak_value(const CMatrix& op, const PureState& psi_i,
                     const PureState& psi_f);

/// |A_w - Ex_W{A | B=given_b}| with postselection on the (nondegenerate)
/// eigenvector of B at given_b. Throws DegeneratePostselection when
/// rank E^B(given_b) > 1.
double steinberg_check(const Observable& a, const Observable& b,
                       const PureState& psi, double given_b);

}  // namespace qsimul
