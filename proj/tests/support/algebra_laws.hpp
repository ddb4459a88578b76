#pragma once

// Randomized checks of the interval-set algebra laws, shared by the unit
// suite and the acceptance runner.

#include <random>
#include <sstream>
#include <string>

#include "amscheck/interval.hpp"

namespace amscheck::testing {

/// Random normalized set inside [0:10]. Endpoints sit on a 0.25 grid so that
/// touching and coinciding endpoints are common, with random closedness and
/// the occasional point interval.
inline IntervalSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_int_distribution<int> tick(0, 40);
  std::bernoulli_distribution flag(0.5);
  std::vector<Interval> items;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int a = tick(rng);
    int b = tick(rng);
    if (a > b) std::swap(a, b);
    Interval iv{a * 0.25, b * 0.25, flag(rng), flag(rng)};
    if (a == b) iv.lo_closed = iv.hi_closed = true;
    items.push_back(iv);
  }
  return IntervalSet::from(std::move(items));
}

inline Interval random_interval(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> tick(0, 40);
  std::bernoulli_distribution flag(0.5);
  int a = tick(rng);
  int b = tick(rng);
  if (a > b) std::swap(a, b);
  Interval iv{a * 0.25, b * 0.25, flag(rng), flag(rng)};
  if (a == b) iv.lo_closed = iv.hi_closed = true;
  return iv;
}

struct LawReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

inline bool subset_of(const IntervalSet& a, const IntervalSet& b) {
  return set_intersect(a, b) == a;
}

/// Runs `cases` random instances of every law and counts the instances in
/// which any law fails.
inline LawReport check_algebra_laws(std::mt19937_64& rng, std::size_t cases) {
  const Interval dom = Interval::closed(0.0, 10.0);
  std::uniform_int_distribution<int> shift_tick(0, 12);
  LawReport rep;
  for (std::size_t i = 0; i < cases; ++i) {
    const IntervalSet a = random_set(rng);
    const IntervalSet b = random_set(rng);
    const IntervalSet c = random_set(rng);
    int lo = shift_tick(rng);
    int hi = shift_tick(rng);
    if (lo > hi) std::swap(lo, hi);
    const double sc = lo * 0.25;
    const double sd = hi * 0.25;
    const Interval iv = random_interval(rng);

    std::ostringstream why;
    auto law = [&](bool ok, const char* name) {
      if (!ok) why << name << "; ";
    };
    law(normalize(normalize(a)) == normalize(a), "normalize idempotent");
    law(normalize(a) == a, "sets stay normalized");
    law(set_complement(set_union(a, b), dom) ==
            set_intersect(set_complement(a, dom), set_complement(b, dom)),
        "De Morgan union");
    law(set_complement(set_intersect(a, b), dom) ==
            set_union(set_complement(a, dom), set_complement(b, dom)),
        "De Morgan intersection");
    law(set_complement(set_complement(a, dom), dom) == a, "complement involution");
    law(set_intersect(a, b) == set_intersect(b, a), "intersection commutes");
    law(set_union(a, b) == set_union(b, a), "union commutes");
    law(set_intersect(set_intersect(a, b), c) == set_intersect(a, set_intersect(b, c)),
        "intersection associates");
    law(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)), "union associates");
    law(set_intersect(a, set_union(b, c)) == set_union(set_intersect(a, b), set_intersect(a, c)),
        "intersection distributes");
    law(set_intersect(a, set_complement(a, dom)).empty(), "A and its complement are disjoint");
    law(set_union(set_intersect(a, b), set_difference(a, b, dom)) == a, "A∩B and A\\B tile A");
    law(set_intersect(set_intersect(a, b), set_difference(a, b, dom)).empty(),
        "A∩B and A\\B are disjoint");

    law(minkowski_sum(iv, 0.0, 0.0) == iv, "sum identity");
    law(minkowski_diff(iv, 0.0, 0.0) == iv, "difference identity");
    law(minkowski_sum(iv, sc, sd).empty() == iv.empty(), "sum emptiness");
    law(minkowski_sum(Interval::empty_interval(), sc, sd).empty(), "sum of empty");
    law(subset_of(IntervalSet(iv), IntervalSet(minkowski_diff(minkowski_sum(iv, sc, sd), sc, sd))),
        "sum then difference covers I");
    law(subset_of(a, minkowski_diff(minkowski_sum(a, sc, sd), sc, sd)), "set sum then difference covers A");
    law(minkowski_sum(a, 0.0, 0.0) == a, "set sum identity");
    law(minkowski_sum(a, sc, sd).empty() == a.empty(), "set sum emptiness");

    ++rep.cases;
    if (!why.str().empty()) {
      if (rep.failures++ == 0) {
        std::ostringstream ss;
        ss << why.str() << "A=" << a << " B=" << b << " C=" << c << " I=" << iv << " [" << sc << ":"
           << sd << "]";
        rep.first_failure = ss.str();
      }
    }
  }
  return rep;
}

}  // namespace amscheck::testing
