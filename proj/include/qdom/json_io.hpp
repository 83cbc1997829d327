#pragma once

#include <string>

#include <json.hpp>

#include "qdom/ball.hpp"
#include "qdom/info.hpp"
#include "qdom/linalg.hpp"
#include "qdom/poset.hpp"
#include "qdom/qwhile.hpp"
#include "qdom/state.hpp"
#include "qdom/valuation.hpp"

// Wire formats shared by the CLI, the oracle runs and the tests. Decoders
// throw qdom::Error(InvalidArgument) on malformed documents.
namespace qdom::io {

using nlohmann::json;

/// Serializes with every number printed as %.17g so output is byte-stable.
std::string dump(const json& j, int indent = -1);

/// {"dim": d, "re": [[...]], "im": [[...]]}
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// Matrix encoding plus {"trace": t}.
json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

/// {"re": [...], "im": [...]}
json to_json(const PureState& psi);
PureState pure_from_json(const json& j);

/// {"center": <pure state>, "radius": r} or {"word": "H(0)", "qubits": n, "radius": r}.
json to_json(const FormalBall& b);
FormalBall ball_from_json(const json& j);

/// {"qubits": n, "atoms": [{"word": w, "radius": r, "weight": p}, ...]}; atoms
/// without a gate word carry "center" instead of "word".
json to_json(const SimpleValuation& v);
SimpleValuation valuation_from_json(const json& j);

json to_json(const ClassicalState& x);
ClassicalState classical_from_json(const json& j);

/// {"final": <density matrix>, "residual": r, "iterations": {"loop0": n, ...}, "converged": b}
json to_json(const RunReport& r);

/// {"elements": [...], "leq": [[bool, ...], ...]}
json to_json(const FinitePoset& p);
FinitePoset poset_from_json(const json& j);

/// Parses text as JSON, or, failing that, reads it as a file path and parses
/// the file. Throws InvalidArgument.
json load_inline_or_file(const std::string& arg);

}  // namespace qdom::io
