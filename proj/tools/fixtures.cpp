#include "cli.hpp"
#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"
#include "ranklab/linsets.hpp"
#include "ranklab/serialize.hpp"

namespace ranklab::cli {

namespace {

// {(x, x^2, 0)} + <(0, 0, 1)> in F_16^3: 1-scattered of dimension 5 with a plane of weight 4.
FqSubspace heavy_plane_example(const TowerPtr& T) {
  const Field& mid = T->mid();
  std::vector<Vec> basis;
  for (unsigned a = 0; a < T->n(); ++a) {
    const Fe x = mid.pow(mid.generator(), a);
    basis.push_back({x, mid.mul(x, x), Fe(0)});
  }
  basis.push_back({Fe(0), Fe(0), Fe(1)});
  return FqSubspace::from_basis(T, 3, std::move(basis));
}

bool same_entry(const std::string& kind, const json& a, const json& b) {
  if (kind == "subspace") {
    const FqSubspace x = subspace_from_json(a), y = subspace_from_json(b);
    return x == y && x.basis() == y.basis();
  }
  if (kind == "rankcode") {
    const RankCode x = rankcode_from_json(a), y = rankcode_from_json(b);
    return x.same_code(y) && x.basis() == y.basis();
  }
  const HammingCode x = hamming_from_json(a), y = hamming_from_json(b);
  return x.tower->same_as(*y.tower) && x.k == y.k && x.N == y.N && x.generator == y.generator &&
         x.enumerator == y.enumerator && x.convention == y.convention;
}

}  // namespace

std::vector<FixtureEntry> build_corpus() {
  std::vector<FixtureEntry> out;
  auto sub = [&](std::string name, const FqSubspace& U) { out.push_back({std::move(name), "subspace", subspace_to_json(U)}); };
  auto code = [&](std::string name, const RankCode& C) { out.push_back({std::move(name), "rankcode", rankcode_to_json(C)}); };
  auto ham = [&](std::string name, const HammingCode& C) { out.push_back({std::move(name), "hamming", hamming_to_json(C)}); };

  const TowerPtr f16 = make_tower(2, 1, 4, 1);
  const TowerPtr f8 = make_tower(2, 1, 3, 1);
  const FqSubspace pr241 = pseudoregulus_subspace(2, 1, f16);
  sub("subspaces/pseudoregulus_r2_n4_h1_q2", pr241);
  sub("subspaces/pseudoregulus_r3_n3_h2_q2", pseudoregulus_subspace(3, 2, f8));
  sub("subspaces/pseudoregulus_r4_n4_h1_q2", pseudoregulus_subspace(4, 1, f16));
  sub("subspaces/delsarte_dual_pseudoregulus_r2_n4_h1_q2", delsarte_dual(pr241).dual);
  sub("subspaces/ordinary_dual_pseudoregulus_r2_n4_h1_q2", ordinary_dual(pr241));
  sub("subspaces/heavy_plane_r3_n4_q2", heavy_plane_example(make_tower(2, 1, 4, 1)));

  const RankCode gab = gabidulin(4, 2, 1, f16);
  code("codes/gabidulin_N4_k2_s1_q2", gab);
  code("codes/gabidulin_N4_k2_s1_q2_delsarte_dual", delsarte_dual_code(gab));
  const TowerPtr f81 = make_tower(3, 1, 4, 1);
  Fe eta(0);
  for (std::uint32_t c = 1; c < f81->qn(); ++c)
    if (twisted_eta_admissible(*f81, 4, 2, Fe(c))) {
      eta = Fe(c);
      break;
    }
  code("codes/twisted_gabidulin_N4_k2_s1_c0_q3", twisted_gabidulin(4, 2, 1, eta, 0, f81).code);
  code("codes/cug_pseudoregulus_r2_n4_h1_q2", c_ug(pr241).code);
  const auto restr = gabidulin_restriction(1, make_tower(2, 1, 3, 2));
  code("codes/gabidulin_restriction_nt6_n3_iota1_q2", restr.code);
  sub("subspaces/gabidulin_restriction_U_nt6_n3_iota1_q2", restr.U);
  sub("subspaces/gabidulin_restriction_Udual_nt6_n3_iota1_q2", restr.Udual);

  HammingCode ps = projective_system_code(linear_set(pr241));
  ps.enumerator = weight_enumerator(ps, EnumeratorConvention::Projective);
  ham("hamming/projsys_pseudoregulus_r2_n4_h1_q2", ps);
  ham("hamming/qsystem_pseudoregulus_r2_n4_h1_q2", qsystem_code(pr241, 1));
  return out;
}

std::filesystem::path write_corpus(const std::filesystem::path& root) {
  const auto dir = root / kCorpusVersion;
  json manifest = {{"version", kCorpusVersion}, {"entries", json::array()}};
  for (const auto& e : build_corpus()) {
    write_json_file(dir / (e.name + ".json"), e.value);
    manifest["entries"].push_back({{"name", e.name}, {"kind", e.kind}});
  }
  write_json_file(dir / "manifest.json", manifest);
  return dir;
}

bool verify_corpus(const std::filesystem::path& versionDir, std::vector<std::string>* failures) {
  const json manifest = read_json_file(versionDir / "manifest.json");
  std::map<std::string, FixtureEntry> fresh;
  for (auto& e : build_corpus()) fresh.emplace(e.name, e);
  bool ok = true;
  auto bad = [&](const std::string& why) {
    ok = false;
    if (failures) failures->push_back(why);
  };
  for (const auto& entry : manifest.at("entries")) {
    const std::string name = entry.at("name").get<std::string>();
    const std::string kind = entry.at("kind").get<std::string>();
    const auto it = fresh.find(name);
    if (it == fresh.end()) {
      bad(name + ": not part of the corpus");
      continue;
    }
    try {
      const json stored = read_json_file(versionDir / (name + ".json"));
      if (!same_entry(kind, stored, it->second.value)) bad(name + ": differs from a fresh build");
      json again;
      if (kind == "subspace") again = subspace_to_json(subspace_from_json(stored));
      else if (kind == "rankcode") again = rankcode_to_json(rankcode_from_json(stored));
      else again = hamming_to_json(hamming_from_json(stored));
      if (again != stored) bad(name + ": serialization round trip changed the document");
    } catch (const Error& e) {
      bad(name + ": " + e.what());
    }
  }
  if (manifest.at("entries").size() != fresh.size()) bad("manifest size differs from the corpus");
  return ok;
}

}  // namespace ranklab::cli
