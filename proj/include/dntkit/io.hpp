#pragma once

// JSON file formats. Parsers throw FormatError naming the offending path.

#include <nlohmann/json.hpp>
#include <string>

#include "dntkit/dnt.hpp"
#include "dntkit/jointmeas.hpp"
#include "dntkit/povm.hpp"
#include "dntkit/sdp.hpp"
#include "dntkit/stochastic.hpp"

namespace dntkit::io {

using Json = nlohmann::json;

/// Writes JSON with every floating-point value at 17 significant digits.
/// Objects are indented; arrays of scalars stay on one line.
std::string dump(const Json& j);

Json parse(const std::string& text, const std::string& source = "input");

// {"rows": r, "cols": c, "data": [[re, im], ...]}, row-major.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& path = "$");
HermitianMatrix hermitian_from_json(const Json& j, const std::string& path = "$");

// {"n": n, "data": [[...], ...]}; a bare nested array is also accepted.
Json real_matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd real_matrix_from_json(const Json& j, const std::string& path = "$");

// {"terms": [{"weight": w, "perm": [1-based images]}]}
Json bvn_to_json(const BvnDecomposition& b);

// {"dim": d, "elements": [matrix, ...]}
Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j, const std::string& path = "$");

// {"m": m, "n": n, "K": K, "probs": [[[...]]]} indexed [i][j][k].
Json map_to_json(const PostProcessingMap& m);
PostProcessingMap map_from_json(const Json& j, const std::string& path = "$");

// {"mother": povm, "map": map}
Json mother_to_json(const MotherMeasurement& m);

// {"povms": [povm, ...]}
Json instance_to_json(const JmInstance& inst);
JmInstance instance_from_json(const Json& j, const std::string& path = "$");

// {"compatible": bool, "eta": real, "mother": {...} | null}
Json verdict_to_json(const JmVerdict& v);

// {"n": n, "dim": d, "grid": [[matrix, ...], ...]}
Json grid_to_json(const Grid& g);
Json dnt_to_json(const Dnt& d);
Grid grid_from_json(const Json& j, const std::string& path = "$");
Dnt dnt_from_json(const Json& j, const std::string& path = "$");

// {"n": n, "coefficients": [matrix, ...]} in canonical permutation order.
Json decomposition_to_json(const PermutationDecomposition& d);
PermutationDecomposition decomposition_from_json(const Json& j, const std::string& path = "$");

// Permutation decomposition fields plus "residual" and "psd_flags".
Json affine_to_json(const AffineDecomposition& a);

// {"order": [1-based], "elements": {"b1-...-bm": matrix}} with 1-based
// outcome labels, plus the per-element "hermitian"/"psd" reports.
Json pseudo_mother_to_json(const PseudoMother& pm);

// Debugging dumps; not a stable format.
Json sdp_problem_to_json(const SdpProblem& p);
Json sdp_solution_to_json(const SdpSolution& s);

}  // namespace dntkit::io
