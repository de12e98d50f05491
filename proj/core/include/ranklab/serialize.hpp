#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "ranklab/bigint.hpp"
#include "ranklab/fields.hpp"
#include "ranklab/fqlinalg.hpp"
#include "ranklab/linsets.hpp"
#include "ranklab/rankcodes.hpp"
#include "ranklab/subspaces.hpp"

namespace ranklab {

using json = nlohmann::json;

// Integers that fit in 64 bits as numbers, larger ones as decimal strings.
json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const json& j);

json tower_to_json(const FieldTower& tower);
TowerPtr tower_from_json(const json& j);

// {level, coeffs}: coefficients over the prime field, low to high.
json fe_to_json(const FieldTower& tower, Level level, Fe x);
Fe fe_from_json(const FieldTower& tower, const json& j);
// Bare coefficient array, the level being implied by the container.
json coeffs_to_json(const Field& f, Fe x);
Fe coeffs_from_json(const Field& f, const json& j);

json mat_to_json(const FieldTower& tower, Level level, const Mat& M);
Mat mat_from_json(const FieldTower& tower, const json& j);

json subspace_to_json(const FqSubspace& U);
FqSubspace subspace_from_json(const json& j);

json rankcode_to_json(const RankCode& C);
RankCode rankcode_from_json(const json& j);

json distribution_to_json(const RankDistribution& A);
json enumerator_to_json(const std::map<std::size_t, BigInt>& e);

json hamming_to_json(const HammingCode& C);
HammingCode hamming_from_json(const json& j);

struct RunReport {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  json timings = json::object();
  json budgets = json::object();
  std::uint64_t seed = 0;
  bool seeded = false;
};

json report_to_json(const RunReport& r);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace ranklab
