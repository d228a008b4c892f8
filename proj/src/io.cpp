#include "arstab/io.hpp"

#include <fstream>
#include <sstream>

namespace arstab {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::uint64_t as_uint(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    parse_fail(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

template <class F>
auto wrap_json(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

Json to_json(const FieldElement& x) {
  if (x.field().is_prime()) return x.code();
  Json arr = Json::array();
  for (const auto& c : x.coefficients()) arr.push_back(to_json(c));
  return arr;
}

FieldElement element_from_json(const Field& field, const Json& j) {
  if (field.is_prime()) {
    const auto v = as_uint(j, "prime-field element");
    if (v >= field.order()) parse_fail("residue out of range");
    return field.element(v);
  }
  if (!j.is_array() || j.size() != field.degree()) parse_fail("element must list " + std::to_string(field.degree()) + " coefficients");
  const Field base = field.base();
  Vector coeffs;
  for (const auto& c : j) coeffs.push_back(element_from_json(base, c));
  return field.from_coefficients(coeffs);
}

Json to_json(const Field& f) {
  Json tower = Json::array();
  for (std::size_t depth = 1; depth <= f.depth(); ++depth) {
    const Field level = f.level(depth);
    const Field base = level.base();
    Json mod = Json::array();
    for (auto c : level.modulus()) mod.push_back(to_json(base.element(c)));
    tower.push_back(std::move(mod));
  }
  Json out;
  out["p"] = f.characteristic();
  out["tower"] = std::move(tower);
  return out;
}

Field field_from_json(const Json& j) {
  return wrap_json([&] {
    Field f = Field::prime(as_uint(member(j, "p"), "p"));
    const Json& tower = member(j, "tower");
    if (!tower.is_array()) parse_fail("tower must be an array");
    for (const auto& mod : tower) {
      if (!mod.is_array()) parse_fail("modulus must be an array");
      std::vector<std::uint64_t> codes;
      for (const auto& c : mod) codes.push_back(element_from_json(f, c).code());
      f = Field::with_modulus(f, std::move(codes));
    }
    return f;
  });
}

Json to_json(const Tensor& t) {
  Json out;
  out["field"] = to_json(t.field());
  out["dims"] = t.dims();
  Json coeffs = Json::array();
  for (auto c : t.codes()) coeffs.push_back(to_json(t.field().element(c)));
  out["coeffs"] = std::move(coeffs);
  return out;
}

Tensor tensor_from_json(const Json& j) {
  return wrap_json([&] {
    const Field f = field_from_json(member(j, "field"));
    std::vector<std::size_t> dims;
    for (const auto& d : member(j, "dims")) dims.push_back(as_uint(d, "dimension"));
    const Json& coeffs = member(j, "coeffs");
    if (!coeffs.is_array()) parse_fail("coeffs must be an array");
    std::vector<std::uint64_t> codes;
    for (const auto& c : coeffs) codes.push_back(element_from_json(f, c).code());
    return Tensor(f, std::move(dims), std::move(codes));
  });
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(to_json(x));
  return arr;
}

Vector vector_from_json(const Field& field, const Json& j) {
  if (!j.is_array()) parse_fail("vector must be an array");
  Vector v;
  for (const auto& x : j) v.push_back(element_from_json(field, x));
  return v;
}

Json to_json(const LinearMap& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

LinearMap linear_map_from_json(const Field& field, const Json& j, std::size_t rows_hint) {
  if (!j.is_array()) parse_fail("matrix must be a list of rows");
  const std::size_t rows = j.size();
  if (rows != rows_hint) parse_fail("matrix row count does not match the leg dimension");
  std::size_t cols = rows == 0 ? 0 : j[0].size();
  std::vector<std::uint64_t> codes;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) parse_fail("ragged matrix");
    for (const auto& x : row) codes.push_back(element_from_json(field, x).code());
  }
  return LinearMap(field, rows, cols, std::move(codes));
}

Json spec_to_json(const TensorSpec& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using S = std::decay_t<decltype(v)>;
        Json out;
        if constexpr (std::is_same_v<S, MultSpec>) {
          out["kind"] = "mult";
          out["top"] = to_json(v.top);
          out["base_depth"] = v.base.depth();
          out["d"] = v.arity;
        } else if constexpr (std::is_same_v<S, DiagonalSpec>) {
          out["kind"] = "unit";
          out["field"] = to_json(v.field);
          out["size"] = v.size;
          out["order"] = v.order;
        } else {
          out["kind"] = "tensor";
          out["tensor"] = to_json(v);
        }
        return out;
      },
      s);
}

TensorSpec spec_from_json(const Json& j) {
  return wrap_json([&]() -> TensorSpec {
    const std::string kind = member(j, "kind").get<std::string>();
    if (kind == "mult") {
      const Field top = field_from_json(member(j, "top"));
      const auto depth = as_uint(member(j, "base_depth"), "base_depth");
      if (depth > top.depth()) parse_fail("base_depth above top field");
      MultSpec spec{top.level(depth), top, static_cast<unsigned>(as_uint(member(j, "d"), "d"))};
      spec.validate();
      return spec;
    }
    if (kind == "unit") {
      return DiagonalSpec{as_uint(member(j, "size"), "size"), as_uint(member(j, "order"), "order"),
                          field_from_json(member(j, "field"))};
    }
    if (kind == "tensor") return tensor_from_json(member(j, "tensor"));
    parse_fail("unknown spec kind '" + kind + "'");
  });
}

Json to_json(const RankDecomposition& d) {
  Json out;
  out["schema"] = kRankDecompositionSchema;
  out["target"] = spec_to_json(d.target);
  out["rank"] = d.rank();
  Json terms = Json::array();
  for (const auto& t : d.terms) {
    Json legs = Json::array();
    for (const auto& v : t.legs) legs.push_back(vector_to_json(v));
    terms.push_back(std::move(legs));
  }
  out["terms"] = std::move(terms);
  return out;
}

RankDecomposition rank_decomposition_from_json(const Json& j) {
  return wrap_json([&] {
    RankDecomposition d{spec_from_json(member(j, "target")), {}};
    const Field f = spec_field(d.target);
    const Json& terms = member(j, "terms");
    if (!terms.is_array()) parse_fail("terms must be an array");
    for (const auto& t : terms) {
      if (!t.is_array()) parse_fail("term must be a list of vectors");
      RankOneTerm term;
      for (const auto& v : t) term.legs.push_back(vector_from_json(f, v));
      d.terms.push_back(std::move(term));
    }
    return d;
  });
}

Json to_json(const RestrictionCertificate& c) {
  Json out;
  out["schema"] = kRestrictionSchema;
  out["source"] = spec_to_json(c.source);
  out["target"] = spec_to_json(c.target);
  Json maps = Json::array();
  for (const auto& m : c.maps) maps.push_back(to_json(m));
  out["maps"] = std::move(maps);
  return out;
}

RestrictionCertificate restriction_from_json(const Json& j) {
  return wrap_json([&] {
    RestrictionCertificate c{spec_from_json(member(j, "source")), spec_from_json(member(j, "target")), {}};
    const Field f = spec_field(c.source);
    const Tensor source = materialize(c.source);
    const Json& maps = member(j, "maps");
    if (!maps.is_array() || maps.size() != source.order()) parse_fail("need one map per leg");
    for (std::size_t k = 0; k < maps.size(); ++k) c.maps.push_back(linear_map_from_json(f, maps[k], source.dim(k)));
    return c;
  });
}

Certificate certificate_from_json(const Json& j) {
  return wrap_json([&]() -> Certificate {
    const std::string schema = member(j, "schema").get<std::string>();
    if (schema == kRankDecompositionSchema) return rank_decomposition_from_json(j);
    if (schema == kRestrictionSchema) return restriction_from_json(j);
    parse_fail("unknown certificate schema '" + schema + "'");
  });
}

bool verify_certificate(const Certificate& c) {
  return std::visit(
      [](const auto& cert) -> bool {
        using C = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<C, RankDecomposition>) {
          return verify_decomposition(cert);
        } else {
          return verify_restriction(cert);
        }
      },
      c);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path);
  out << text;
}

}  // namespace arstab
