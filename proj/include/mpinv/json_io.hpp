#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "mpinv/condition_report.hpp"
#include "mpinv/harness.hpp"
#include "mpinv/isometry.hpp"
#include "mpinv/matrix.hpp"
#include "mpinv/mp_hermitian.hpp"
#include "mpinv/pinv.hpp"
#include "mpinv/reverse_order.hpp"

namespace mpinv {

using Json = nlohmann::ordered_json;

/// {"rows": m, "cols": n, "data": [[re, im], ...]} row-major.
Json to_json(const Matrix& m);

/// Strict reader: rows/cols positive integers, exactly rows*cols finite
/// [re, im] pairs.  Throws Error{Parse} (or NonFinite) otherwise.
Matrix matrix_from_json(const Json& j);
Matrix parse_matrix(std::string_view text);

Json to_json(const Tolerance& t);
Json to_json(const PenroseResiduals& r);
Json to_json(const PinvResult& r);
Json to_json(const ConditionReport& r);
Json to_json(const RolReport& r);
Json to_json(const ClassificationReport& r);
Json to_json(const MphDecomposition& d);
Json to_json(const FuzzFailure& f);
Json to_json(const FuzzReport& r);

/// Pretty-printed with two-space indentation.
std::string dump(const Json& j);

}  // namespace mpinv
