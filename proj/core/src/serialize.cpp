#include "ranklab/serialize.hpp"

#include <fstream>
#include <limits>

#include "ranklab/error.hpp"

namespace ranklab {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

json poly_to_json(const Field& f, const FieldPoly& poly) {
  json out = json::array();
  for (Fe c : poly) out.push_back(coeffs_to_json(f, c));
  return out;
}

}  // namespace

json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

json tower_to_json(const FieldTower& T) {
  return {{"p", T.p()},
          {"e", T.e()},
          {"n", T.n()},
          {"t", T.t()},
          {"modulusBase", poly_to_json(T.prime_field(), T.modulus_base())},
          {"modulusMid", poly_to_json(T.base(), T.modulus_mid())},
          {"modulusTop", poly_to_json(T.mid(), T.modulus_top())}};
}

TowerPtr tower_from_json(const json& j) {
  const auto p = get<std::uint32_t>(j, "p");
  const auto e = get<unsigned>(j, "e");
  const auto n = get<unsigned>(j, "n");
  const auto t = get<unsigned>(j, "t");
  TowerPtr T = make_tower(p, e, n, t);
  if (j.contains("modulusMid") && j.at("modulusMid") != poly_to_json(T->base(), T->modulus_mid()))
    fail(ErrorCode::ParseError, "tower modulusMid differs from the canonical modulus");
  if (j.contains("modulusTop") && j.at("modulusTop") != poly_to_json(T->mid(), T->modulus_top()))
    fail(ErrorCode::ParseError, "tower modulusTop differs from the canonical modulus");
  return T;
}

json coeffs_to_json(const Field& f, Fe x) { return prime_coefficients(f, x); }

Fe coeffs_from_json(const Field& f, const json& j) {
  if (!j.is_array() || j.size() != f.degree()) fail(ErrorCode::ParseError, "bad coefficient array " + j.dump());
  std::vector<std::uint32_t> c;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= f.characteristic())
      fail(ErrorCode::ParseError, "coefficient out of range in " + j.dump());
    c.push_back(v.get<std::uint32_t>());
  }
  return from_prime_coefficients(f, c);
}

json fe_to_json(const FieldTower& T, Level level, Fe x) {
  return {{"level", to_string(level)}, {"coeffs", coeffs_to_json(T.level(level), x)}};
}

Fe fe_from_json(const FieldTower& T, const json& j) {
  const Level level = level_from_string(get<std::string>(j, "level"));
  return coeffs_from_json(T.level(level), at(j, "coeffs"));
}

json mat_to_json(const FieldTower& T, Level level, const Mat& M) {
  const Field& f = T.level(level);
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < M.cols; ++c) row.push_back(coeffs_to_json(f, M(i, c)));
    rows.push_back(std::move(row));
  }
  return {{"level", to_string(level)}, {"rows", M.rows}, {"cols", M.cols}, {"entries", std::move(rows)}};
}

Mat mat_from_json(const FieldTower& T, const json& j) {
  const Field& f = T.level(level_from_string(get<std::string>(j, "level")));
  const auto rows = get<std::size_t>(j, "rows");
  const auto cols = get<std::size_t>(j, "cols");
  const json& entries = at(j, "entries");
  if (!entries.is_array() || entries.size() != rows) fail(ErrorCode::ParseError, "matrix row count mismatch");
  Mat M(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!entries[i].is_array() || entries[i].size() != cols) fail(ErrorCode::ParseError, "matrix column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) M(i, c) = coeffs_from_json(f, entries[i][c]);
  }
  return M;
}

json subspace_to_json(const FqSubspace& U) {
  const Field& mid = U.tower().mid();
  json basis = json::array();
  for (const Vec& v : U.basis()) {
    json row = json::array();
    for (Fe x : v) row.push_back(coeffs_to_json(mid, x));
    basis.push_back(std::move(row));
  }
  return {{"tower", tower_to_json(U.tower())}, {"r", U.r()}, {"k", U.k()}, {"basisMid", std::move(basis)}};
}

FqSubspace subspace_from_json(const json& j) {
  TowerPtr T = tower_from_json(at(j, "tower"));
  const auto r = get<std::size_t>(j, "r");
  const auto k = get<std::size_t>(j, "k");
  const json& basis = at(j, "basisMid");
  if (!basis.is_array() || basis.size() != k) fail(ErrorCode::ParseError, "basisMid must hold k vectors");
  std::vector<Vec> vs;
  for (const auto& row : basis) {
    if (!row.is_array() || row.size() != r) fail(ErrorCode::ParseError, "basis vector length differs from r");
    Vec v;
    for (const auto& x : row) v.push_back(coeffs_from_json(T->mid(), x));
    vs.push_back(std::move(v));
  }
  return FqSubspace::from_basis(T, r, std::move(vs));
}

json rankcode_to_json(const RankCode& C) {
  const Field& f = C.field();
  json basis = json::array();
  for (const Mat& M : C.basis()) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows; ++i) {
      json row = json::array();
      for (std::size_t c = 0; c < M.cols; ++c) row.push_back(coeffs_to_json(f, M(i, c)));
      rows.push_back(std::move(row));
    }
    basis.push_back(std::move(rows));
  }
  return {{"p", f.characteristic()}, {"e", f.degree()}, {"q", f.size()},          {"m", C.m()},
          {"n", C.n()},              {"K", C.dim()},    {"basis", std::move(basis)}};
}

RankCode rankcode_from_json(const json& j) {
  const auto p = get<std::uint32_t>(j, "p");
  const auto e = get<unsigned>(j, "e");
  const auto m = get<std::size_t>(j, "m");
  const auto n = get<std::size_t>(j, "n");
  TowerPtr T = make_tower(p, e, 1, 1);
  if (j.contains("q") && get<std::uint64_t>(j, "q") != T->q()) fail(ErrorCode::ParseError, "q differs from p^e");
  const Field& f = T->base();
  const json& basis = at(j, "basis");
  if (!basis.is_array()) fail(ErrorCode::ParseError, "basis must be an array");
  std::vector<Mat> mats;
  for (const auto& rows : basis) {
    if (!rows.is_array() || rows.size() != m) fail(ErrorCode::ParseError, "basis matrix must have m rows");
    Mat M(f, m, n);
    for (std::size_t i = 0; i < m; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) fail(ErrorCode::ParseError, "basis matrix must have n columns");
      for (std::size_t c = 0; c < n; ++c) M(i, c) = coeffs_from_json(f, rows[i][c]);
    }
    mats.push_back(std::move(M));
  }
  if (j.contains("K") && get<std::size_t>(j, "K") != mats.size()) fail(ErrorCode::ParseError, "K differs from basis size");
  return RankCode::from_basis(T->base_ptr(), m, n, std::move(mats));
}

json distribution_to_json(const RankDistribution& A) {
  json a = json::array();
  for (const BigInt& v : A.A) a.push_back(bigint_to_json(v));
  return {{"m", A.m}, {"n", A.n}, {"K", A.K}, {"q", A.q}, {"A", std::move(a)}, {"d", A.min_distance()}};
}

json enumerator_to_json(const std::map<std::size_t, BigInt>& e) {
  json out = json::object();
  for (const auto& [w, c] : e) out[std::to_string(w)] = bigint_to_json(c);
  return out;
}

json hamming_to_json(const HammingCode& C) {
  const FieldTower& T = *C.tower;
  json rows = json::array();
  for (std::size_t i = 0; i < C.generator.rows; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < C.generator.cols; ++c) row.push_back(coeffs_to_json(T.mid(), C.generator(i, c)));
    rows.push_back(std::move(row));
  }
  json out = {{"field", {{"p", T.p()}, {"e", T.e()}, {"n", T.n()}, {"size", T.qn()}}},
              {"k", C.k},
              {"N", C.N},
              {"generator", std::move(rows)},
              {"convention", to_string(C.convention)}};
  out["enumerator"] = enumerator_to_json(C.enumerator);
  return out;
}

HammingCode hamming_from_json(const json& j) {
  const json& field = at(j, "field");
  HammingCode C;
  C.tower = make_tower(get<std::uint32_t>(field, "p"), get<unsigned>(field, "e"), get<unsigned>(field, "n"), 1);
  C.k = get<std::size_t>(j, "k");
  C.N = get<std::size_t>(j, "N");
  const json& rows = at(j, "generator");
  if (!rows.is_array() || rows.size() != C.k) fail(ErrorCode::ParseError, "generator must have k rows");
  C.generator = Mat(C.field(), C.k, C.N);
  for (std::size_t i = 0; i < C.k; ++i) {
    if (!rows[i].is_array() || rows[i].size() != C.N) fail(ErrorCode::ParseError, "generator row length differs from N");
    for (std::size_t c = 0; c < C.N; ++c) C.generator(i, c) = coeffs_from_json(C.field(), rows[i][c]);
  }
  if (j.contains("convention"))
    C.convention = get<std::string>(j, "convention") == "codeword" ? EnumeratorConvention::Codeword
                                                                    : EnumeratorConvention::Projective;
  if (j.contains("enumerator"))
    for (const auto& [w, c] : at(j, "enumerator").items()) C.enumerator[std::stoul(w)] = bigint_from_json(c);
  return C;
}

json report_to_json(const RunReport& r) {
  json out = {{"command", r.command},
              {"parameters", r.parameters},
              {"results", r.results},
              {"budgets", r.budgets},
              {"timings", r.timings}};
  out["seed"] = r.seeded ? json(r.seed) : json(nullptr);
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace ranklab
