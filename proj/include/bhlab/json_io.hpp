#pragma once

// JSON forms of the value types. Doubles are written in shortest round-trip
// form, so parse(dump(x)) reproduces every coefficient bit for bit.

#include <string>

#include <json.hpp>

#include "bhlab/certificate.hpp"
#include "bhlab/multiindex.hpp"
#include "bhlab/polynomial.hpp"
#include "bhlab/tensor.hpp"

namespace bhlab {

using Json = nlohmann::json;

Json to_json(const MultiIndex& alpha);
MultiIndex multiindex_from_json(const Json& j);

/// {"n": int, "m": int|null, "terms": [{"alpha": [...], "re": f, "im": f}]}
Json to_json(const PolynomialSparse& p);
PolynomialSparse polynomial_from_json(const Json& j);

/// {"n": int, "m": int, "entries": [{"index": [1-based], "re": f, "im": f}]}
/// listing nonzero coefficients only.
Json to_json(const MultilinearTensor& t);
MultilinearTensor tensor_from_json(const Json& j);

/// {"estimate","lower","upper","method","evaluations","converged"}
Json to_json(const NormCertificate& c);
NormCertificate certificate_from_json(const Json& j);

} // namespace bhlab
