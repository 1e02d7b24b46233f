#include "ca/session.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ca/error.hpp"

namespace ca {

namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys{"characteristic", "variables", "ideal", "equidimensional", "modules",
                                     "sequences", "ideals", "complexes", "primes"};

// Re-raises engine errors with the JSON path of the offending entry.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

const json& expect(const json& j, json::value_t type, const std::string& path, const char* what) {
  if (j.type() != type) fail(ErrorCode::Parse, path + ": expected " + what);
  return j;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(ErrorCode::Parse, path + ": unknown key \"" + key + "\"");
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Poly poly_at(const json& j, const PolyRing& ring, const std::string& path, bool homogeneous) {
  expect(j, json::value_t::string, path, "a polynomial string");
  return at_path(path, [&] { return parse_poly(j.get<std::string>(), ring, homogeneous); });
}

std::vector<Poly> poly_list(const json& j, const PolyRing& ring, const std::string& path) {
  expect(j, json::value_t::array, path, "a list of polynomials");
  std::vector<Poly> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(poly_at(j[i], ring, index_path(path, i), true));
  return out;
}

std::vector<std::vector<Poly>> poly_matrix(const json& j, const PolyRing& ring, const std::string& path) {
  expect(j, json::value_t::array, path, "a matrix (list of rows)");
  std::vector<std::vector<Poly>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string rp = index_path(path, i);
    expect(j[i], json::value_t::array, rp, "a row of polynomials");
    if (i > 0 && j[i].size() != j[0].size()) fail(ErrorCode::Parse, rp + ": rows have different lengths");
    std::vector<Poly> row;
    for (std::size_t c = 0; c < j[i].size(); ++c) row.push_back(poly_at(j[i][c], ring, index_path(rp, c), false));
    rows.push_back(std::move(row));
  }
  return rows;
}

PolyMatrix build_matrix(const PrimeField& field, const std::vector<std::vector<Poly>>& rows,
                        const std::vector<int>& row_degrees, const std::vector<std::optional<int>>& fallback,
                        const std::string& path) {
  std::vector<int> cols = at_path(path, [&] { return infer_column_degrees(rows, row_degrees, fallback); });
  PolyMatrix m(field, row_degrees, cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) m.at(i, c) = rows[i][c];
  return m;
}

std::vector<int> int_list(const json& j, const std::string& path) {
  expect(j, json::value_t::array, path, "a list of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) fail(ErrorCode::Parse, index_path(path, i) + ": expected an integer");
    out.push_back(j[i].get<int>());
  }
  return out;
}

FgModule load_module(const json& j, const RingPtr& ring, const std::string& path) {
  expect(j, json::value_t::object, path, "an object");
  check_keys(j, {"presentation", "row_degrees"}, path);
  if (!j.contains("presentation")) fail(ErrorCode::Parse, path + ": missing \"presentation\"");
  auto rows = poly_matrix(j["presentation"], ring->base(), path + ".presentation");
  std::vector<int> row_degrees(rows.size(), 0);
  if (j.contains("row_degrees")) {
    row_degrees = int_list(j["row_degrees"], path + ".row_degrees");
    if (row_degrees.size() != rows.size())
      fail(ErrorCode::Parse, path + ".row_degrees: expected " + std::to_string(rows.size()) + " entries");
  }
  PolyMatrix p = build_matrix(ring->field(), rows, row_degrees, {}, path + ".presentation");
  return at_path(path, [&] { return FgModule(ring, std::move(p)); });
}

FreeComplex load_complex(const json& j, const RingPtr& ring, const std::string& path) {
  expect(j, json::value_t::array, path, "a list of matrices");
  std::vector<PolyMatrix> maps;
  std::vector<int> degrees;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string mp = path + ".d" + std::to_string(k + 1);
    auto rows = poly_matrix(j[k], ring->base(), mp);
    if (k == 0) degrees.assign(rows.size(), 0);
    if (rows.size() != degrees.size())
      fail(ErrorCode::DimMismatch, mp + ": has " + std::to_string(rows.size()) + " rows, expected " +
                                       std::to_string(degrees.size()));
    // A zero column gets a shift one above the top row degree.
    int top = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) top = i == 0 ? degrees[i] : std::max(top, degrees[i]);
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    std::vector<std::optional<int>> fallback(ncols, top + 1);
    PolyMatrix m = build_matrix(ring->field(), rows, degrees, fallback, mp);
    degrees = m.col_degrees();
    maps.push_back(std::move(m));
  }
  return at_path(path, [&] { return FreeComplex::from_maps(ring, std::move(maps)); });
}

PrimeDatum load_prime(const json& j, const RingPtr& ring, const std::string& name, const std::string& path) {
  expect(j, json::value_t::object, path, "an object");
  check_keys(j, {"ideal", "lengths"}, path);
  if (!j.contains("ideal") || !j.contains("lengths"))
    fail(ErrorCode::Parse, path + ": needs \"ideal\" and \"lengths\"");
  PrimeDatum d;
  d.name = name;
  d.ideal = poly_list(j["ideal"], ring->base(), path + ".ideal");
  for (int l : int_list(j["lengths"], path + ".lengths")) {
    if (l < 0) fail(ErrorCode::Parse, path + ".lengths: lengths must be non-negative");
    d.lengths.push_back(l);
  }
  if (d.lengths.empty()) fail(ErrorCode::Parse, path + ".lengths: empty");
  if (dimension(*ring, d.ideal).is_minus_infinity())
    fail(ErrorCode::DimMismatch, path + ".ideal: the unit ideal is not a prime");
  return d;
}

// Parse callback rejecting duplicate keys inside any object.
struct DuplicateKeyGuard {
  std::vector<std::set<std::string>> stack;
  bool operator()(int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: stack.emplace_back(); break;
      case json::parse_event_t::object_end: stack.pop_back(); break;
      case json::parse_event_t::key: {
        std::string key = parsed.get<std::string>();
        if (!stack.back().insert(key).second) fail(ErrorCode::Parse, "duplicate name \"" + key + "\"");
        break;
      }
      default: break;
    }
    return true;
  }
};

}  // namespace

const FgModule& Session::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) fail(ErrorCode::InvalidArgument, "no module named \"" + name + "\"");
  return it->second;
}

const FreeComplex& Session::complex(const std::string& name) const {
  auto it = complexes.find(name);
  if (it == complexes.end()) fail(ErrorCode::InvalidArgument, "no complex named \"" + name + "\"");
  return it->second;
}

const PrimeDatum& Session::prime(const std::string& name) const {
  auto it = primes.find(name);
  if (it == primes.end()) fail(ErrorCode::InvalidArgument, "no prime named \"" + name + "\"");
  return it->second;
}

Session parse_session(std::string_view text, const GbOptions& options) {
  json root;
  try {
    DuplicateKeyGuard guard;
    root = json::parse(text.begin(), text.end(), std::ref(guard));
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("parse error");
    fail(ErrorCode::Parse, pos == std::string::npos ? msg : msg.substr(pos));
  }
  expect(root, json::value_t::object, "session", "a JSON object");
  check_keys(root, kTopKeys, "session");
  if (!root.contains("characteristic") || !root["characteristic"].is_number_unsigned())
    fail(ErrorCode::Parse, "characteristic: expected a prime");
  if (!root.contains("variables")) fail(ErrorCode::Parse, "variables: missing");
  const json& vars = expect(root["variables"], json::value_t::array, "variables", "a list of names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    expect(vars[i], json::value_t::string, index_path("variables", i), "a name");
    names.push_back(vars[i].get<std::string>());
  }
  auto p = root["characteristic"].get<std::uint64_t>();
  PolyRing base = at_path("variables", [&] { return PolyRing(p, names); });

  std::vector<Poly> ideal;
  if (root.contains("ideal")) ideal = poly_list(root["ideal"], base, "ideal");
  bool equidim = false;
  if (root.contains("equidimensional")) {
    expect(root["equidimensional"], json::value_t::boolean, "equidimensional", "true or false");
    equidim = root["equidimensional"].get<bool>();
  }

  Session s;
  s.ring = at_path("ideal", [&] { return std::make_shared<QuotientRing>(base, ideal, equidim, options); });

  std::set<std::string> seen;
  auto each = [&](const char* section, auto&& load) {
    if (!root.contains(section)) return;
    const json& obj = expect(root[section], json::value_t::object, section, "an object of named entries");
    for (const auto& [name, value] : obj.items()) {
      if (!seen.insert(name).second) fail(ErrorCode::Parse, std::string(section) + ": duplicate name \"" + name + "\"");
      load(name, value, std::string(section) + "." + name);
    }
  };
  each("modules", [&](const std::string& n, const json& v, const std::string& path) {
    s.modules.emplace(n, load_module(v, s.ring, path));
  });
  each("sequences", [&](const std::string& n, const json& v, const std::string& path) {
    s.sequences.emplace(n, poly_list(v, base, path));
  });
  each("ideals", [&](const std::string& n, const json& v, const std::string& path) {
    s.ideals.emplace(n, poly_list(v, base, path));
  });
  each("complexes", [&](const std::string& n, const json& v, const std::string& path) {
    s.complexes.emplace(n, load_complex(v, s.ring, path));
  });
  each("primes", [&](const std::string& n, const json& v, const std::string& path) {
    s.primes.emplace(n, load_prime(v, s.ring, n, path));
  });
  return s;
}

Session load_session(const std::filesystem::path& path, const GbOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_session(buf.str(), options);
}

}  // namespace ca
