#pragma once

#include <cstddef>
#include <map>
#include <memory>

#include "ranklab/bigint.hpp"
#include "ranklab/fqlinalg.hpp"
#include "ranklab/parallel.hpp"
#include "ranklab/subspaces.hpp"

namespace ranklab {

// The points <u> of PG(r-1, q^n) for nonzero u in U, keyed by the normalized
// representative, with their weights dim_{F_q}(U ∩ <u>).
struct LinearSet {
  FqSubspace U;
  std::map<Vec, std::size_t> points;

  std::size_t rank() const { return U.k(); }
  std::size_t size() const { return points.size(); }
  bool is_scattered_set() const;
};

LinearSet linear_set(const FqSubspace& U, const ScanOptions& opts = {});

// Hyperplanes by i, where the weight is rn/(h+1) - n + i. U must be maximum h-scattered.
std::map<std::size_t, BigInt> hyperplane_spectrum(const FqSubspace& U, std::size_t h, const ScanOptions& opts = {});
BigInt ti_formula(std::size_t r, std::size_t n, std::size_t h, std::uint64_t q, std::size_t i);

enum class EnumeratorConvention { Projective, Codeword };
const char* to_string(EnumeratorConvention c);

struct HammingCode {
  TowerPtr tower;  // the code lives over tower->mid()
  std::size_t k = 0;
  std::size_t N = 0;
  Mat generator;  // k x N over field
  EnumeratorConvention convention = EnumeratorConvention::Projective;
  std::map<std::size_t, BigInt> enumerator;  // nonzero weights only; empty until computed

  const Field& field() const { return tower->mid(); }
};

HammingCode projective_system_code(const LinearSet& L);
// Columns are the F_q-basis of U, in basis order.
HammingCode qsystem_code(const FqSubspace& U, std::size_t h, const ScanOptions& opts = {});

// Brute force over all messages; Projective counts each 1-space of codewords once.
std::map<std::size_t, BigInt> weight_enumerator(const HammingCode& C, EnumeratorConvention convention,
                                                const ScanOptions& opts = {});
// A_{N - |L ∩ H|} from hyperplane intersections of the point set.
std::map<std::size_t, BigInt> enumerator_from_hyperplanes(const LinearSet& L, EnumeratorConvention convention,
                                                          const ScanOptions& opts = {});
// w_i = theta_{rn/(h+1)-1} - theta_{rn/(h+1)-n+i-1} with coefficient t_i.
std::map<std::size_t, BigInt> closed_form_enumerator(std::size_t r, std::size_t n, std::size_t h, std::uint64_t q,
                                                     EnumeratorConvention convention);
std::size_t hamming_min_distance(const HammingCode& C, const ScanOptions& opts = {});

}  // namespace ranklab
