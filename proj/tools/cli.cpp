#include "cli.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"
#include "ranklab/linsets.hpp"
#include "ranklab/serialize.hpp"

namespace ranklab::cli {

namespace {

struct Args {
  bool json = false;
  unsigned threads = 0;
  std::uint64_t budget = ScanOptions{}.budget;
  std::uint64_t subspaceBudget = ScanOptions{}.subspaceBudget;
  std::optional<std::uint64_t> seed;
  std::uint32_t q = 2;
  std::string out;

  std::string subspaceFile;
  std::string pseudoregulus;
  std::string codeFile;
  std::string otherFile;
  std::string gabidulinSpec;
  std::optional<std::size_t> h;

  unsigned N = 0, k = 0, s = 1, c = 0;
  std::string eta = "auto";
  std::size_t r = 0, n = 0, dim = 0;
  std::uint64_t timeBudgetMs = 10000;
  std::uint64_t maxIterations = 0;
  std::size_t rows = 0;
  std::string invariants;
  std::string dir = "fixtures";

  bool ordinary = false, delsarte = false;
  bool left = false, right = false;
  bool mrdCheck = false;
  bool enumerator = false, codewordCount = false;
};

ScanOptions scan_options(const Args& a) { return {a.budget, a.subspaceBudget, a.threads}; }

std::pair<std::uint32_t, unsigned> split_prime_power(std::uint32_t q) {
  require(q >= 2, ErrorCode::InvalidArgument, "q must be a prime power >= 2");
  const auto primes = prime_divisors(q);
  require(primes.size() == 1, ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  unsigned e = 0;
  for (std::uint32_t v = q; v > 1; v /= static_cast<std::uint32_t>(primes[0])) ++e;
  return {static_cast<std::uint32_t>(primes[0]), e};
}

std::vector<std::size_t> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::UsageError, std::string(what) + ": '" + text + "' is not a comma separated integer list");
    }
  }
  require(out.size() == expected, ErrorCode::UsageError,
          std::string(what) + " expects " + std::to_string(expected) + " comma separated values");
  return out;
}

TowerPtr tower_for(std::uint32_t q, unsigned n, unsigned t = 1) {
  const auto [p, e] = split_prime_power(q);
  return make_tower(p, e, n, t);
}

struct SubspaceInput {
  FqSubspace U;
  std::optional<std::size_t> h;
  json source;
};

SubspaceInput load_subspace(const Args& a) {
  require(a.subspaceFile.empty() != a.pseudoregulus.empty(), ErrorCode::UsageError,
          "give exactly one of --subspace FILE or --pseudoregulus r,n,h");
  if (!a.subspaceFile.empty())
    return {subspace_from_json(read_json_file(a.subspaceFile)), a.h, {{"file", a.subspaceFile}}};
  const auto v = parse_list(a.pseudoregulus, 3, "--pseudoregulus");
  const std::size_t r = v[0], n = v[1], h = v[2];
  require(n >= 1, ErrorCode::InvalidArgument, "n must be positive");
  FqSubspace U = pseudoregulus_subspace(r, h, tower_for(a.q, static_cast<unsigned>(n)));
  return {std::move(U), a.h ? a.h : std::optional<std::size_t>(h),
          {{"pseudoregulus", {{"r", r}, {"n", n}, {"h", h}, {"q", a.q}}}}};
}

RankCode load_code(const Args& a, json& source) {
  require(a.codeFile.empty() != a.gabidulinSpec.empty(), ErrorCode::UsageError,
          "give exactly one of --code FILE or --gabidulin N,k,s");
  if (!a.codeFile.empty()) {
    source = {{"file", a.codeFile}};
    return rankcode_from_json(read_json_file(a.codeFile));
  }
  const auto v = parse_list(a.gabidulinSpec, 3, "--gabidulin");
  source = {{"gabidulin", {{"N", v[0]}, {"k", v[1]}, {"s", v[2]}, {"q", a.q}}}};
  const auto N = static_cast<unsigned>(v[0]);
  return gabidulin(N, static_cast<unsigned>(v[1]), static_cast<unsigned>(v[2]), tower_for(a.q, N));
}

json subspace_summary(const FqSubspace& U) {
  return {{"q", U.tower().q()}, {"n", U.n()}, {"r", U.r()}, {"k", U.k()}};
}

json code_summary(const RankCode& C) { return {{"q", C.q()}, {"m", C.m()}, {"n", C.n()}, {"K", C.dim()}}; }

json map_to_json(const std::map<std::size_t, std::uint64_t>& m) {
  json out = json::object();
  for (auto [key, v] : m) out[std::to_string(key)] = v;
  return out;
}

json bigmap_to_json(const std::map<std::size_t, BigInt>& m) { return enumerator_to_json(m); }

void maybe_write(const Args& a, const json& object) {
  if (!a.out.empty()) write_json_file(a.out, object);
}

Fe pick_eta(const FieldTower& T, unsigned N, unsigned k, const std::string& text) {
  const Field& f = T.level(level_of_degree(T, N));
  if (text == "auto") {
    for (std::uint32_t code = 1; code < f.size(); ++code)
      if (twisted_eta_admissible(T, N, k, Fe(code))) return Fe(code);
    fail(ErrorCode::EtaConditionViolated, "no admissible eta exists for these parameters");
  }
  std::size_t used = 0;
  unsigned long code = 0;
  try {
    code = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && used > 0, ErrorCode::UsageError, "--eta expects 'auto' or a packed element code");
  require(code < f.size(), ErrorCode::InvalidArgument, "--eta code outside the field");
  return Fe(static_cast<std::uint32_t>(code));
}

json distribution_json(const RankDistribution& A) { return distribution_to_json(A); }

using Handler = std::function<json(const Args&, RunReport&)>;

json cmd_field_info(const Args& a, RunReport& rep) {
  require(a.n >= 1, ErrorCode::UsageError, "--n is required");
  const unsigned t = a.N == 0 ? 1 : a.N;
  TowerPtr T = tower_for(a.q, static_cast<unsigned>(a.n), t);
  rep.parameters = {{"q", a.q}, {"n", a.n}, {"t", t}};
  const Fe g = T->mid().generator();
  json mp = json::array();
  for (Fe c : minimal_polynomial(*T, g)) mp.push_back(coeffs_to_json(T->base(), c));
  return {{"tower", tower_to_json(*T)},
          {"sizes", {{"base", T->q()}, {"mid", T->qn()}, {"top", T->top().size()}}},
          {"generatorTrace", coeffs_to_json(T->base(), trace_to_base(*T, g))},
          {"generatorMinimalPolynomial", mp}};
}

json cmd_scattered_check(const Args& a, RunReport& rep) {
  const auto in = load_subspace(a);
  const std::size_t h = in.h.value_or(1);
  const FqSubspace& U = in.U;
  const ScanOptions opts = scan_options(a);
  rep.parameters = {{"source", in.source}, {"h", h}};
  json res = subspace_summary(U);
  res["h"] = h;
  res["spans"] = U.spans();
  res["iota"] = iota(U, opts);
  const bool scattered = is_h_scattered(U, h, opts);
  res["hScattered"] = scattered;
  res["dimensionBound"] = scattered ? to_string(check_dimension_bound(U, h)) : "n/a";
  res["maxHyperplaneWeight"] = max_hyperplane_weight(U, opts);
  const std::size_t rn = U.r() * U.n();
  if (rn % (h + 1) == 0 && U.k() == rn / (h + 1)) {
    const auto ch = characterize_max_h_scattered(U, h, opts);
    res["characterization"] = {{"viaDefinition", ch.viaDefinition},
                               {"viaHyperplanes", ch.viaHyperplanes},
                               {"viaDualPoints", ch.viaDualPoints},
                               {"hypothesisHolds", ch.hypothesisHolds},
                               {"agree", ch.agree()}};
  }
  return res;
}

json cmd_dualize(const Args& a, RunReport& rep) {
  require(a.ordinary != a.delsarte, ErrorCode::UsageError, "give exactly one of --ordinary or --delsarte");
  const auto in = load_subspace(a);
  rep.parameters = {{"source", in.source}, {"kind", a.ordinary ? "ordinary" : "delsarte"}};
  json res = {{"input", subspace_summary(in.U)}, {"kind", a.ordinary ? "ordinary" : "delsarte"}};
  FqSubspace D;
  if (a.ordinary) {
    D = ordinary_dual(in.U);
    res["involution"] = ordinary_dual(D) == in.U;
  } else {
    const ScanOptions opts = scan_options(a);
    D = delsarte_dual(in.U, opts).dual;
    res["doubleDualRecoversU"] = delsarte_double_dual(in.U, opts).recoversU;
  }
  res["dual"] = subspace_summary(D);
  res["subspace"] = subspace_to_json(D);
  maybe_write(a, res["subspace"]);
  return res;
}

json cmd_mrd_check(const Args& a, RunReport& rep) {
  json source;
  const RankCode C = load_code(a, source);
  rep.parameters = {{"source", source}};
  const ScanOptions opts = scan_options(a);
  const RankDistribution A = rank_distribution(C, opts);
  const std::size_t d = A.min_distance();
  json res = code_summary(C);
  res["d"] = d;
  const bool mrd = d > 0 && mrd_parameters(C.m(), C.n(), C.dim(), d);
  res["is_mrd"] = mrd;
  res["distribution"] = distribution_json(A);
  if (mrd) res["closedFormMatches"] = A == mrd_weight_distribution(C.m(), C.n(), C.q(), d);
  return res;
}

json cmd_rank_dist(const Args& a, RunReport& rep) {
  json source;
  const RankCode C = load_code(a, source);
  rep.parameters = {{"source", source}};
  json res = code_summary(C);
  res["distribution"] = distribution_json(rank_distribution(C, scan_options(a)));
  return res;
}

json idealiser_json(const Idealiser& I) {
  return {{"side", to_string(I.side)},     {"dim", I.dim},
          {"order", bigint_to_json(I.order)}, {"isField", I.isField},
          {"probabilistic", I.probabilistic}};
}

json cmd_idealiser(const Args& a, RunReport& rep) {
  require(a.left != a.right, ErrorCode::UsageError, "give exactly one of --left or --right");
  json source;
  const RankCode C = load_code(a, source);
  rep.parameters = {{"source", source}, {"side", a.left ? "left" : "right"}};
  const ScanOptions opts = scan_options(a);
  const std::uint64_t seed = a.seed.value_or(0);
  const Idealiser I = a.left ? left_idealiser(C, opts, seed) : right_idealiser(C, opts, seed);
  json res = code_summary(C);
  res["idealiser"] = idealiser_json(I);
  res["verified"] = verify_idealiser(C, I);
  return res;
}

json cmd_dualize_code(const Args& a, RunReport& rep) {
  json source;
  const RankCode C = load_code(a, source);
  rep.parameters = {{"source", source}};
  const RankCode D = delsarte_dual_code(C);
  json res = {{"input", code_summary(C)}, {"dual", code_summary(D)}};
  res["involution"] = delsarte_dual_code(D).same_code(C);
  res["code"] = rankcode_to_json(D);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_puncture(const Args& a, RunReport& rep) {
  json source;
  const RankCode C = load_code(a, source);
  require(a.rows >= 1 && a.rows <= C.n(), ErrorCode::UsageError, "--rows must lie in 1..n");
  rep.parameters = {{"source", source}, {"rows", a.rows}};
  Mat A(C.field(), a.rows, C.n());
  if (a.seed) {
    std::mt19937_64 rng(*a.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, C.q() - 1);
    do {
      for (auto& x : A.data) x = Fe(pick(rng));
    } while (rank(A) < a.rows);
  } else {
    for (std::size_t i = 0; i < a.rows; ++i) A(i, i) = Fe(1);
  }
  const RankCode P = puncture(C, A);
  const ScanOptions opts = scan_options(a);
  const std::size_t d = min_distance(P, opts);
  json res = {{"input", code_summary(C)}, {"punctured", code_summary(P)}, {"d", d}};
  res["is_mrd"] = mrd_parameters(P.m(), P.n(), P.dim(), d);
  res["code"] = rankcode_to_json(P);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_certify(const Args& a, RunReport& rep) {
  require(!a.otherFile.empty(), ErrorCode::UsageError, "--other FILE is required");
  json source;
  const RankCode C1 = load_code(a, source);
  const RankCode C2 = rankcode_from_json(read_json_file(a.otherFile));
  rep.parameters = {{"source", source}, {"other", a.otherFile}};
  const auto cert = inequivalence_certificate(C1, C2, scan_options(a));
  return {{"verdict", cert.inequivalent ? "CertifiedInequivalent" : "Inconclusive"}, {"reasons", cert.reasons}};
}

json cmd_exclusion(const Args& a, RunReport& rep) {
  require(a.r >= 1 && a.n >= 1 && a.h, ErrorCode::UsageError, "--r, --n and --h are required");
  rep.parameters = {{"r", a.r}, {"n", a.n}, {"h", *a.h}};
  Exclusion e;
  if (!a.invariants.empty()) {
    const auto v = parse_list(a.invariants, 6, "--invariants");
    CodeInvariants inv{v[0], v[1], v[2], v[3], static_cast<std::uint32_t>(v[4]), v[5]};
    rep.parameters["invariants"] = a.invariants;
    e = gabidulin_family_exclusion(inv, a.r, a.n, *a.h);
  } else {
    json source;
    const RankCode C = load_code(a, source);
    rep.parameters["source"] = source;
    e = gabidulin_family_exclusion(C, a.r, a.n, *a.h, scan_options(a));
  }
  return {{"verdict", to_string(e)}};
}

json cmd_gabidulin(const Args& a, RunReport& rep) {
  rep.parameters = {{"N", a.N}, {"k", a.k}, {"s", a.s}, {"q", a.q}};
  const RankCode C = gabidulin(a.N, a.k, a.s, tower_for(a.q, a.N));
  json res = code_summary(C);
  res["designDistance"] = a.N - a.k + 1;
  if (a.mrdCheck) {
    const std::size_t d = min_distance(C, scan_options(a));
    res["d"] = d;
    res["is_mrd"] = mrd_parameters(C.m(), C.n(), C.dim(), d);
  }
  res["code"] = rankcode_to_json(C);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_twisted(const Args& a, RunReport& rep) {
  TowerPtr T = tower_for(a.q, a.N);
  const Fe eta = pick_eta(*T, a.N, a.k, a.eta);
  rep.parameters = {{"N", a.N}, {"k", a.k}, {"s", a.s}, {"c", a.c}, {"q", a.q}, {"eta", a.eta}};
  const auto tg = twisted_gabidulin(a.N, a.k, a.s, eta, a.c, T);
  json res = code_summary(tg.code);
  res["eta"] = eta.code;
  res["untwisted"] = tg.untwisted;
  if (a.mrdCheck) {
    const std::size_t d = min_distance(tg.code, scan_options(a));
    res["d"] = d;
    res["is_mrd"] = mrd_parameters(tg.code.m(), tg.code.n(), tg.code.dim(), d);
  }
  res["code"] = rankcode_to_json(tg.code);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_cug(const Args& a, RunReport& rep) {
  const auto in = load_subspace(a);
  rep.parameters = {{"source", in.source}, {"mrdCheck", a.mrdCheck}};
  const ScanOptions opts = scan_options(a);
  const CUGCode C = c_ug(in.U, opts);
  json res = {{"subspace", subspace_summary(in.U)}, {"iota", C.iota}, {"params", code_summary(C.code)}};
  res["predicate"] = c_ug_mrd_predicate(in.U, opts);
  if (a.mrdCheck) {
    const RankDistribution A = rank_distribution(C.code, opts);
    const std::size_t d = A.min_distance();
    const bool mrd = d > 0 && mrd_parameters(C.code.m(), C.code.n(), C.code.dim(), d);
    res["d"] = d;
    res["is_mrd"] = mrd;
    res["distribution"] = distribution_json(A);
    res["params"]["d"] = d;
    const Idealiser R = right_idealiser(C.code, opts, a.seed.value_or(0));
    res["rightIdealiser"] = idealiser_json(R);
  }
  res["code"] = rankcode_to_json(C.code);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_extract(const Args& a, RunReport& rep) {
  json source;
  const RankCode C = load_code(a, source);
  rep.parameters = {{"source", source}};
  const auto [p, e] = split_prime_power(C.q());
  const ConverseResult cr = mrd_to_subspace(C, make_tower(p, e, static_cast<unsigned>(C.n()), 1), scan_options(a));
  json res = {{"input", code_summary(C)}, {"k", cr.U.k()}, {"r", cr.U.r()}, {"iota", cr.iota}};
  res["roundTrip"] = cr.roundTrip;
  res["subspace"] = subspace_to_json(cr.U);
  maybe_write(a, res["subspace"]);
  return res;
}

json cmd_search(const Args& a, RunReport& rep) {
  require(a.seed.has_value(), ErrorCode::UsageError, "search-scattered requires --seed");
  require(a.r >= 1 && a.n >= 1 && a.h, ErrorCode::UsageError, "--r, --n and --h are required");
  rep.parameters = {{"r", a.r},   {"n", a.n},           {"h", *a.h},
                    {"k", a.dim}, {"q", a.q},           {"budgetMs", a.timeBudgetMs},
                    {"maxIterations", a.maxIterations}};
  SearchOptions so;
  so.seed = *a.seed;
  so.timeBudget = std::chrono::milliseconds(a.timeBudgetMs);
  so.maxIterations = a.maxIterations;
  so.scan = scan_options(a);
  const SearchResult sr = random_scattered_search(a.r, *a.h, a.dim, tower_for(a.q, static_cast<unsigned>(a.n)), so);
  rep.timings["searchIterations"] = sr.iterations;
  rep.timings["searchRestarts"] = sr.restarts;
  json res = {{"found", sr.witness.has_value()}};
  if (sr.witness) {
    res["subspace"] = subspace_to_json(*sr.witness);
    maybe_write(a, res["subspace"]);
  }
  return res;
}

json cmd_linset_points(const Args& a, RunReport& rep) {
  const auto in = load_subspace(a);
  rep.parameters = {{"source", in.source}};
  const LinearSet L = linear_set(in.U, scan_options(a));
  std::map<std::size_t, std::uint64_t> byWeight;
  BigInt partition = 0;
  json points = json::array();
  for (const auto& [p, w] : L.points) {
    ++byWeight[w];
    partition += big_pow(in.U.tower().q(), w) - 1;
    json coords = json::array();
    for (Fe x : p) coords.push_back(coeffs_to_json(in.U.tower().mid(), x));
    points.push_back({{"point", coords}, {"weight", w}});
  }
  return {{"subspace", subspace_summary(in.U)},
          {"rank", L.rank()},
          {"size", L.size()},
          {"scatteredSet", L.is_scattered_set()},
          {"weightCounts", map_to_json(byWeight)},
          {"partitionIdentity", partition == big_pow(in.U.tower().q(), in.U.k()) - 1},
          {"points", points}};
}

json cmd_spectrum(const Args& a, RunReport& rep) {
  const auto in = load_subspace(a);
  require(in.h.has_value(), ErrorCode::UsageError, "--h is required with --subspace");
  const std::size_t h = *in.h;
  const FqSubspace& U = in.U;
  rep.parameters = {{"source", in.source}, {"h", h}};
  const auto spectrum = hyperplane_spectrum(U, h, scan_options(a));
  const std::size_t r = U.r(), n = U.n();
  const std::uint32_t q = U.tower().q();
  std::map<std::size_t, BigInt> formula;
  json weights = json::object();
  BigInt total = 0;
  for (std::size_t i = 0; i <= h; ++i) {
    formula[i] = ti_formula(r, n, h, q, i);
    weights[std::to_string(i)] = r * n / (h + 1) - n + i;
    total += spectrum.at(i);
  }
  return {{"subspace", subspace_summary(U)},
          {"h", h},
          {"spectrum", bigmap_to_json(spectrum)},
          {"formula", bigmap_to_json(formula)},
          {"weights", weights},
          {"matches", spectrum == formula},
          {"total", bigint_to_json(total)},
          {"hyperplanes", bigint_to_json(theta(static_cast<long>(r) - 1, U.tower().qn()))}};
}

json cmd_projsys(const Args& a, RunReport& rep) {
  const auto in = load_subspace(a);
  const auto conv = a.codewordCount ? EnumeratorConvention::Codeword : EnumeratorConvention::Projective;
  rep.parameters = {{"source", in.source}, {"enumerator", a.enumerator}, {"convention", to_string(conv)}};
  const ScanOptions opts = scan_options(a);
  HammingCode C = projective_system_code(linear_set(in.U, opts));
  C.convention = conv;
  json res = {{"N", C.N}, {"k", C.k}};
  if (a.enumerator) {
    C.enumerator = weight_enumerator(C, conv, opts);
    res["d"] = C.enumerator.empty() ? 0 : C.enumerator.begin()->first;
    res["weights"] = C.enumerator.size();
    const std::size_t rn = in.U.r() * in.U.n();
    if (in.h && rn % (*in.h + 1) == 0 && in.U.k() == rn / (*in.h + 1) && is_h_scattered(in.U, *in.h, opts)) {
      const auto closed = closed_form_enumerator(in.U.r(), in.U.n(), *in.h, in.U.tower().q(), conv);
      res["closedForm"] = bigmap_to_json(closed);
      res["closedFormMatches"] = closed == C.enumerator;
    }
  }
  res["code"] = hamming_to_json(C);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_qsystem(const Args& a, RunReport& rep) {
  const auto in = load_subspace(a);
  require(in.h.has_value(), ErrorCode::UsageError, "--h is required with --subspace");
  rep.parameters = {{"source", in.source}, {"h", *in.h}};
  const ScanOptions opts = scan_options(a);
  const HammingCode C = qsystem_code(in.U, *in.h, opts);
  json res = {{"N", C.N}, {"k", C.k}, {"d", hamming_min_distance(C, opts)}};
  res["code"] = hamming_to_json(C);
  maybe_write(a, res["code"]);
  return res;
}

json cmd_fixtures(const Args& a, RunReport& rep) {
  rep.parameters = {{"dir", a.dir}, {"version", kCorpusVersion}};
  const auto dir = write_corpus(a.dir);
  std::vector<std::string> failures;
  const bool ok = verify_corpus(dir, &failures);
  json names = json::array();
  for (const auto& e : build_corpus()) names.push_back(e.name);
  return {{"version", kCorpusVersion}, {"entries", names}, {"roundTrip", ok}, {"failures", failures}};
}

void print_human(std::ostream& out, const RunReport& rep) {
  out << rep.command << '\n';
  for (const auto& [key, value] : rep.results.items()) {
    if (key == "code" || key == "subspace" || key == "points") {
      out << "  " << key << ": (" << value.size() << " fields; see --json)\n";
      continue;
    }
    if (key == "spectrum" || key == "formula") {
      out << "  " << key << ":";
      for (const auto& [i, c] : value.items()) out << " t_" << i << "=" << (c.is_string() ? c.get<std::string>() : c.dump());
      out << '\n';
      continue;
    }
    out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"rank-lab: scattered subspaces, linear sets and rank-metric codes"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all");

  std::map<std::string, Handler> handlers;
  std::string chosen;
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", a.json, "Machine-readable report");
    sub->add_option("--threads", a.threads, "Worker threads (0 = hardware)");
    sub->add_option("--budget", a.budget, "Codeword/vector enumeration budget");
    sub->add_option("--subspace-budget", a.subspaceBudget, "Subspace enumeration budget");
    sub->add_option("--q", a.q, "Base field size (prime power)");
  };
  auto verb = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[name] = std::move(h);
    sub->callback([&chosen, name] { chosen = name; });
    return sub;
  };
  auto subspace_in = [&](CLI::App* sub) {
    sub->add_option("--subspace", a.subspaceFile, "Subspace JSON file");
    sub->add_option("--pseudoregulus", a.pseudoregulus, "Pseudoregulus subspace r,n,h");
    sub->add_option("--h", a.h, "Scatteredness parameter h");
  };
  auto code_in = [&](CLI::App* sub) {
    sub->add_option("--code", a.codeFile, "Rank code JSON file");
    sub->add_option("--gabidulin", a.gabidulinSpec, "Gabidulin code N,k,s");
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", a.out, "Write the produced object to this file"); };

  {
    auto* s = verb("field-info", "Describe a field tower", cmd_field_info);
    s->add_option("--n", a.n, "Middle degree")->required();
    s->add_option("--t", a.N, "Top degree");
  }
  {
    auto* s = verb("scattered-check", "Scatteredness, iota and characterizations", cmd_scattered_check);
    subspace_in(s);
  }
  {
    auto* s = verb("dualize", "Ordinary or Delsarte dual of a subspace", cmd_dualize);
    subspace_in(s);
    out_opt(s);
    s->add_flag("--ordinary", a.ordinary);
    s->add_flag("--delsarte", a.delsarte);
  }
  {
    auto* s = verb("mrd-check", "Minimum distance and MRD test", cmd_mrd_check);
    code_in(s);
  }
  {
    auto* s = verb("rank-dist", "Rank distribution", cmd_rank_dist);
    code_in(s);
  }
  {
    auto* s = verb("idealiser", "Left or right idealiser", cmd_idealiser);
    code_in(s);
    s->add_flag("--left", a.left);
    s->add_flag("--right", a.right);
    s->add_option("--seed", a.seed, "Seed for sampled field checks");
  }
  {
    auto* s = verb("dualize-code", "Delsarte dual code", cmd_dualize_code);
    code_in(s);
    out_opt(s);
  }
  {
    auto* s = verb("puncture", "Puncture a square code by a full-rank matrix", cmd_puncture);
    code_in(s);
    out_opt(s);
    s->add_option("--rows", a.rows, "Rows of the puncturing matrix")->required();
    s->add_option("--seed", a.seed, "Random full-rank matrix instead of [I|0]");
  }
  {
    auto* s = verb("certify-inequivalent", "Invariant-based inequivalence certificate", cmd_certify);
    code_in(s);
    s->add_option("--other", a.otherFile, "Second rank code JSON file");
  }
  {
    auto* s = verb("exclusion", "Punctured generalized Gabidulin exclusion test", cmd_exclusion);
    code_in(s);
    s->add_option("--r", a.r);
    s->add_option("--n", a.n);
    s->add_option("--h", a.h);
    s->add_option("--invariants", a.invariants, "Stated invariants m,n,K,d,q,rightIdealiserDim");
  }
  {
    auto* s = verb("gabidulin", "Generalized Gabidulin code", cmd_gabidulin);
    out_opt(s);
    s->add_option("--N", a.N)->required();
    s->add_option("--k", a.k)->required();
    s->add_option("--s", a.s);
    s->add_flag("--mrd-check", a.mrdCheck);
  }
  {
    auto* s = verb("twisted-gabidulin", "Generalized twisted Gabidulin code", cmd_twisted);
    out_opt(s);
    s->add_option("--N", a.N)->required();
    s->add_option("--k", a.k)->required();
    s->add_option("--s", a.s);
    s->add_option("--c", a.c);
    s->add_option("--eta", a.eta, "'auto' or a packed element code");
    s->add_flag("--mrd-check", a.mrdCheck);
  }
  {
    auto* s = verb("cug", "The code C_{U,G}", cmd_cug);
    subspace_in(s);
    out_opt(s);
    s->add_flag("--mrd-check", a.mrdCheck);
    s->add_option("--seed", a.seed, "Seed for sampled field checks");
  }
  {
    auto* s = verb("extract-subspace", "Subspace behind an MRD code with maximal right idealiser", cmd_extract);
    code_in(s);
    out_opt(s);
  }
  {
    auto* s = verb("search-scattered", "Randomized search for h-scattered subspaces", cmd_search);
    out_opt(s);
    s->add_option("--r", a.r)->required();
    s->add_option("--n", a.n)->required();
    s->add_option("--h", a.h)->required();
    s->add_option("--k", a.dim)->required();
    s->add_option("--seed", a.seed);
    s->add_option("--budget-ms", a.timeBudgetMs, "Time budget in milliseconds");
    s->add_option("--max-iterations", a.maxIterations);
  }
  {
    auto* s = verb("linset-points", "Points of the linear set with weights", cmd_linset_points);
    subspace_in(s);
  }
  {
    auto* s = verb("hyperplane-spectrum", "Hyperplanes by weight against the closed form", cmd_spectrum);
    subspace_in(s);
  }
  {
    auto* s = verb("projsys-code", "Hamming code of the projective system", cmd_projsys);
    subspace_in(s);
    out_opt(s);
    s->add_flag("--enumerator", a.enumerator);
    s->add_flag("--codeword-count", a.codewordCount, "Count codewords instead of hyperplanes");
  }
  {
    auto* s = verb("qsystem-code", "Hamming code whose columns are an F_q-basis of U", cmd_qsystem);
    subspace_in(s);
    out_opt(s);
  }
  {
    auto* s = verb("fixtures", "Write the fixture corpus", cmd_fixtures);
    s->add_option("--dir", a.dir, "Corpus root directory");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  RunReport rep;
  rep.command = chosen;
  if (a.seed) {
    rep.seed = *a.seed;
    rep.seeded = true;
  }
  rep.budgets = {{"codewords", a.budget}, {"subspaces", a.subspaceBudget}, {"threads", a.threads}};
  const auto start = std::chrono::steady_clock::now();
  try {
    rep.results = handlers.at(chosen)(a, rep);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    if (a.json) {
      json j = {{"command", chosen}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}, {"exitCode", code}};
      out << j.dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return code;
  } catch (const std::exception& e) {
    err << "error: InternalError: " << e.what() << '\n';
    return 2;
  }
  rep.timings["totalMs"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (a.json)
    out << report_to_json(rep).dump(2) << '\n';
  else
    print_human(out, rep);
  return 0;
}

}  // namespace ranklab::cli
