#pragma once

#include <string>

#include "json.hpp"
#include "qsimul/quasiprob.hpp"
#include "qsimul/simul.hpp"
#include "qsimul/sweeps.hpp"

namespace qsimul {

using Json = nlohmann::ordered_json;

// Matrices serialize as {"rows", "cols", "entries"} with entries a row-major
// list of [re, im] pairs. States serialize as bare entry lists. Doubles are
// emitted with enough digits to round-trip bit-exactly.

Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json to_json(const PureState& psi);
PureState state_from_json(const Json& j);

/// Observables accept a full matrix, a spectral form
/// {"eigenvalues": [...], "projections": [...]}, or a preset name
/// ("pauli_x", "pauli_y", "pauli_z", "identity(d)").
Json to_json(const Observable& a);
Observable observable_from_json(const Json& j);

Json to_json(const QuasiDistribution& q);
std::string to_csv(const QuasiDistribution& q);

Json to_json(const OutcomeDistribution& d);
Json to_json(const JointOutputDistribution& d);
std::string to_csv(const JointOutputDistribution& d);

Json to_json(const MeasuringProcess& mp);
MeasuringProcess process_from_json(const Json& j);

Json to_json(const SimultaneousProcess& sp);
SimultaneousProcess simultaneous_process_from_json(const Json& j);

Json to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json to_json(const Subspace& s);

Json to_json(const CommutativityReport& r);
Json to_json(const CorrelationReport& r);
Json to_json(const SimultaneityReport& r);
Json to_json(const MarginalCheck& r);
Json to_json(const ErrorBudget& b);
Json to_json(const UncertaintyReport& r);
Json to_json(const Dim2Report& r);
Json to_json(const SweepResult& r);
Json to_json(const WeakValue& w);

/// Formats x with 17 significant digits, locale-independent.
std::string format_double(double x);

}  // namespace qsimul
