#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace hgs {

// Highest weight of SO(k), increasing convention, entries doubled so that
// half-integer classes stay exact:
//   SO(2r):   |m_1| <= m_2 <= ... <= m_r   (first entry may be negative)
//   SO(2r+1):    0 <= m_1 <= ... <= m_r
// All entries share one parity class (all doubled-even or all doubled-odd).
struct Weight {
  std::vector<long> twice;

  bool half_integer() const;
  bool is_zero() const;
  bool operator==(const Weight& o) const { return twice == o.twice; }
  bool operator<(const Weight& o) const { return twice < o.twice; }
  std::string str() const;  // "(m1,...,mr)" with halves printed as a/2
};

Weight weight_from_ints(const std::vector<long>& entries);

int so_rank(int k);
bool valid_weight(int k, const Weight& w);

// Unitary series label of SO0(1,N): principal (omega symbolic, xi in M^),
// or discrete (N even only): (s != 0, xi) with |s| <= xi_1 <= ... <= xi_{r-1}.
struct SeriesLabel {
  enum class Kind { principal, discrete };
  Kind kind = Kind::principal;
  int N = 3;
  Weight xi;       // weight of M = SO(N-1)
  long twice_s = 0;  // discrete only; sign selects the pi^+ / pi^- branch

  static SeriesLabel principal(int N, Weight xi);
  static SeriesLabel discrete(int N, long s, Weight xi);
  std::string str() const;
};

// Interlacing predicate: does pi_sigma|_K contain the K-weight kappa?
bool series_contains(const SeriesLabel& label, const Weight& kappa);

// All K = SO(N) weights in the restriction, multiplicity one each, with the
// last entry bounded by cutoff (the content itself is infinite).
std::vector<Weight> k_content(const SeriesLabel& label, long cutoff);

bool contains_k_singlet(const SeriesLabel& label);

// Independent branching route: does r_kappa|_{SO(N-1)} contain xi, by the
// classical interlacing rules written in the decreasing convention.
bool branching_contains(int N, const Weight& kappa, const Weight& xi);

// {pi_{omega,xi}|_K contains kappa, r_kappa|_M contains xi}; the general
// reciprocity rule says the two always agree.
std::pair<bool, bool> branching_reciprocity(int N, const Weight& kappa,
                                            const Weight& xi);

// Aligned text table and JSON of a content listing.
void print_content(std::ostream& os, const SeriesLabel& label,
                   const std::vector<Weight>& content);
nlohmann::json content_to_json(const SeriesLabel& label,
                               const std::vector<Weight>& content);

}  // namespace hgs
