#include "bhlab/json_io.hpp"

#include <stdexcept>

namespace bhlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

} // namespace

Json to_json(const MultiIndex& alpha) {
  return Json(std::vector<int>(alpha.exponents().begin(), alpha.exponents().end()));
}

MultiIndex multiindex_from_json(const Json& j) {
  if (!j.is_array())
    throw std::invalid_argument("json: multi-index must be an array");
  return MultiIndex(j.get<std::vector<int>>());
}

Json to_json(const PolynomialSparse& p) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : p.terms())
    terms.push_back({{"alpha", to_json(alpha)}, {"re", c.real()}, {"im", c.imag()}});
  Json out;
  out["n"] = p.dimension();
  out["m"] = p.homogeneous_degree() ? Json(*p.homogeneous_degree()) : Json(nullptr);
  out["terms"] = std::move(terms);
  return out;
}

PolynomialSparse polynomial_from_json(const Json& j) {
  const int n = field(j, "n").get<int>();
  const Json& m = field(j, "m");
  PolynomialSparse p(n, m.is_null() ? std::nullopt : std::optional<int>(m.get<int>()));
  for (const auto& t : field(j, "terms")) {
    const MultiIndex alpha = multiindex_from_json(field(t, "alpha"));
    if (p.coefficient(alpha) != Complex{})
      throw std::invalid_argument("json: duplicate exponent in polynomial");
    p.set(alpha, {field(t, "re").get<double>(), field(t, "im").get<double>()});
  }
  return p;
}

Json to_json(const MultilinearTensor& t) {
  Json entries = Json::array();
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f] == Complex{})
      continue;
    const IndexTuple i = t.tuple_at(f);
    entries.push_back({{"index", std::vector<int>(i.entries().begin(), i.entries().end())},
                       {"re", t[f].real()},
                       {"im", t[f].imag()}});
  }
  return {{"n", t.dimension()}, {"m", t.arity()}, {"entries", std::move(entries)}};
}

MultilinearTensor tensor_from_json(const Json& j) {
  const int n = field(j, "n").get<int>();
  const int m = field(j, "m").get<int>();
  MultilinearTensor t(m, n);
  for (const auto& e : field(j, "entries")) {
    const IndexTuple i(field(e, "index").get<std::vector<int>>(), n);
    if (i.arity() != m)
      throw std::invalid_argument("json: tensor index has wrong arity");
    t.at(i) = {field(e, "re").get<double>(), field(e, "im").get<double>()};
  }
  return t;
}

Json to_json(const NormCertificate& c) {
  return {{"estimate", c.estimate}, {"lower", c.lower},           {"upper", c.upper},
          {"method", c.method},     {"evaluations", c.evaluations}, {"converged", c.converged}};
}

NormCertificate certificate_from_json(const Json& j) {
  NormCertificate c;
  c.estimate = field(j, "estimate").get<double>();
  c.lower = field(j, "lower").get<double>();
  c.upper = field(j, "upper").get<double>();
  c.method = field(j, "method").get<std::string>();
  c.evaluations = field(j, "evaluations").get<std::int64_t>();
  c.converged = field(j, "converged").get<bool>();
  return c;
}

} // namespace bhlab
