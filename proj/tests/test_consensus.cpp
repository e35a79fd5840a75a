#include "ognav/consensus.hpp"

#include <doctest.h>

#include <cmath>

using namespace ognav;

namespace {

/// Direct enumeration of the tier logic, element by element; the
/// brute-force oracle for find_consensus.
std::pair<ConsensusTier, std::set<int>> consensus_oracle(
    const std::set<int>& s1, const std::set<int>& s2, const std::set<int>& s3,
    const std::vector<int>& universe) {
  std::set<int> unanimous, partial;
  for (int f : universe) {
    const int n = static_cast<int>(s1.count(f)) + static_cast<int>(s2.count(f)) +
                  static_cast<int>(s3.count(f));
    if (n == 3) unanimous.insert(f);
    if (n >= 2) partial.insert(f);
  }
  if (!unanimous.empty()) return {ConsensusTier::Unanimous, unanimous};
  if (!partial.empty()) return {ConsensusTier::Partial, partial};
  return {ConsensusTier::Fallback, {}};
}

std::set<int> subset_of(unsigned mask, int n) {
  std::set<int> out;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) out.insert(i);
  return out;
}

}  // namespace

TEST_CASE("find_consensus: spec examples") {
  auto [t1, c1] = find_consensus({2, 3}, {1, 3}, {3, 4});
  CHECK(t1 == ConsensusTier::Unanimous);
  CHECK(c1 == std::set<int>{3});

  auto [t2, c2] = find_consensus({1, 2}, {2}, {1});
  CHECK(t2 == ConsensusTier::Partial);
  CHECK(c2 == std::set<int>{1, 2});

  auto [t3, c3] = find_consensus({1}, {2}, {3});
  CHECK(t3 == ConsensusTier::Fallback);
  CHECK(c3.empty());

  auto [t4, c4] = find_consensus({}, {}, {});
  CHECK(t4 == ConsensusTier::Fallback);
}

TEST_CASE("find_consensus: exhaustive agreement with the enumeration oracle") {
  const std::vector<int> universe = {0, 1, 2, 3, 4};
  for (unsigned m1 = 0; m1 < 32; ++m1)
    for (unsigned m2 = 0; m2 < 32; ++m2)
      for (unsigned m3 = 0; m3 < 32; ++m3) {
        const auto s1 = subset_of(m1, 5), s2 = subset_of(m2, 5),
                   s3 = subset_of(m3, 5);
        const auto got = find_consensus(s1, s2, s3);
        const auto want = consensus_oracle(s1, s2, s3, universe);
        REQUIRE(got.first == want.first);
        REQUIRE(got.second == want.second);
      }
}

TEST_CASE("select_frontier: argmin with smaller-id ties") {
  const std::vector<int> candidates = {3, 7};
  CHECK(*select_frontier({3, 7}, ConsensusTier::Partial, candidates,
                         {{3, 4.0}, {7, 2.5}}) == 7);
  CHECK(*select_frontier({3, 7}, ConsensusTier::Partial, candidates,
                         {{3, 2.5}, {7, 2.5}}) == 3);

  const std::vector<int> all = {1, 2, 3};
  CHECK(*select_frontier({}, ConsensusTier::Fallback, all,
                         {{1, 5.0}, {2, 1.0}, {3, 9.0}}) == 2);
  CHECK_FALSE(select_frontier({}, ConsensusTier::Fallback, {}, {}).has_value());
}

TEST_CASE("cdm: majority endorsement holds over random triples") {
  Rng rng(123456);
  std::uniform_int_distribution<unsigned> mask(0, 255);
  std::uniform_real_distribution<double> dist(0.1, 30.0);
  for (int trial = 0; trial < 100000; ++trial) {
    const auto s1 = subset_of(mask(rng), 8), s2 = subset_of(mask(rng), 8),
               s3 = subset_of(mask(rng), 8);
    std::vector<int> candidates;
    std::map<int, double> distances;
    for (int i = 0; i < 8; ++i) {
      candidates.push_back(i);
      distances[i] = dist(rng);
    }
    const auto outcome = cdm_decide(s1, s2, s3, candidates, distances);
    REQUIRE(outcome.has_value());

    auto endorsements = [&](int f) {
      return static_cast<int>(s1.count(f)) + static_cast<int>(s2.count(f)) +
             static_cast<int>(s3.count(f));
    };
    bool any_two = false;
    for (int i = 0; i < 8; ++i)
      if (endorsements(i) >= 2) any_two = true;

    // tier exclusivity & containment
    if (outcome->tier != ConsensusTier::Fallback) {
      CHECK(outcome->consensus_set.count(outcome->chosen) == 1);
      const bool in_union = s1.count(outcome->chosen) || s2.count(outcome->chosen) ||
                            s3.count(outcome->chosen);
      CHECK(in_union);
    }
    if (any_two) CHECK(endorsements(outcome->chosen) >= 2);
  }
}

TEST_CASE("majority vote: plurality, tie to nearest, empty fallback") {
  const std::vector<int> candidates = {1, 2, 3, 5};
  const std::map<int, double> d = {{1, 4.0}, {2, 2.0}, {3, 6.0}, {5, 1.0}};
  Rng rng(5);

  // scripted "expert": returns queued sets in order
  std::vector<std::set<int>> samples = {{5}, {5}, {2}};
  std::size_t cursor = 0;
  StochasticExpert scripted = [&](Rng&) { return samples[cursor++]; };
  CHECK(*majority_vote_baseline(scripted, 3, candidates, d, rng) == 5);

  samples = {{1}, {2}, {3}};
  cursor = 0;
  CHECK(*majority_vote_baseline(scripted, 3, candidates, d, rng) == 2);

  samples = {{}, {}, {}};
  cursor = 0;
  CHECK(*majority_vote_baseline(scripted, 3, candidates, d, rng) == 5);  // closest
}

TEST_CASE("closest frontier baseline") {
  CHECK(*closest_frontier_baseline({1, 2}, {{1, 3.0}, {2, 1.5}}) == 2);
  CHECK(*closest_frontier_baseline({4}, {{4, 0.5}}) == 4);
  CHECK(*closest_frontier_baseline({1, 2}, {{1, 2.0}, {2, 2.0}}) == 1);
  CHECK_FALSE(closest_frontier_baseline({}, {}).has_value());
}
