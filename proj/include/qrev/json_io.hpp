#pragma once

// JSON encodings shared by the CLI and the golden-file tests.
//
//   matrix       {"rows": n, "cols": m, "data": [[re, im], ...]}   row-major
//   state vector {"dim": n, "data": [[re, im], ...]}
//   subspace     {"ambient_dim": n, "basis": [state vector, ...]}
//   measurement  {"dim": n, "outcomes": [{"label": s, "kraus": [matrix, ...]}, ...]}
//   scheme       {"d": n, "resource": state vector,
//                 "measurement": [{"gamma": g, "vector": state vector}, ...]}
//   certificate  {"mu_squared": x, "residual": r, "unitary": matrix}
//
// Decoding failures throw SchemaError; values that parse but violate a
// domain invariant surface as qrev::Error from the owning constructor.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qrev/channels.hpp"
#include "qrev/mz.hpp"
#include "qrev/qmat.hpp"
#include "qrev/reversal.hpp"
#include "qrev/teleport.hpp"

namespace qrev::json {

using nlohmann::json;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json encode(Complex z);
json encode(const ComplexMatrix& m);
json encode(const StateVector& v);
json encode(const Subspace& s);
json encode(const Measurement& m);
json encode(const teleport::TeleportationScheme& s);
json encode(const teleport::SchemeVerdict& v);
json encode(const teleport::Characterization& c);
json encode(const ReversibilityCertificate& c);
json encode(const mz::Params& p);
json encode(const mz::DemoReport& r);

Complex decode_complex(const json& j);
ComplexMatrix decode_matrix(const json& j);
StateVector decode_state(const json& j);
Subspace decode_subspace(const json& j);
Measurement decode_measurement(const json& j);
teleport::TeleportationScheme decode_scheme(const json& j);
mz::Params decode_mz_params(const json& j);

}  // namespace qrev::json
