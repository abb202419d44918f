#pragma once

#include <vector>

#include "nckit/ncpoly.hpp"

namespace nckit {

// One oriented rewrite: the leading word maps to a polynomial all of whose
// terms are strictly smaller in deglex.
struct Rule {
  Word lhs;
  NcPoly rhs;
};

struct CompletionLimits {
  size_t max_rules = 20000;
  size_t max_passes = 10000;
};

struct EnumLimits {
  size_t max_words = 2000000;
};

// Degree-truncated rewriting system for a two-sided homogeneous ideal.
// After complete(), every overlap of degree <= complete_to reduces to zero,
// so normal words of degree <= complete_to are an exact basis of the
// quotient.  fully_complete means the final rules admit no overlaps above
// the bound either: the system is then a genuine Groebner basis and normal
// word counts are exact in every degree.  collapsed marks the unit ideal
// (the quotient is the zero ring; there are no normal words at all).
struct RewritingSystem {
  std::shared_ptr<const Alphabet> alpha;
  std::vector<Rule> rules;
  unsigned degree_bound = 0;
  unsigned complete_to = 0;
  bool fully_complete = false;
  bool collapsed = false;

  // rule indices whose lhs starts with a given letter (reduction accelerator)
  std::vector<std::vector<unsigned>> by_first;
  void reindex();
};

// Reduce to the unique normal form modulo the rules.  Deterministic: the
// greatest pending term is rewritten first, at its leftmost reducible
// position, by the lowest-numbered matching rule.  Terms of degree above
// degree_bound are rejected.
NcPoly normal_form(const NcPoly& p, const RewritingSystem& rs);

// Buchberger-style truncated completion of a homogeneous relation ideal.
// All input relations must be homogeneous of degree <= degree_bound.
RewritingSystem complete(std::shared_ptr<const Alphabet> alpha,
                         const std::vector<NcPoly>& relations, unsigned degree_bound,
                         const CompletionLimits& lim = {});

// Words containing no rule lhs as a factor, listed in increasing deglex
// order.  Requires degree <= complete_to for the basis interpretation.
std::vector<Word> normal_words(const RewritingSystem& rs, unsigned degree,
                               const EnumLimits& lim = {});

// Counts of normal words for every degree 0..max_degree.
std::vector<unsigned long long> normal_word_counts(const RewritingSystem& rs,
                                                   unsigned max_degree,
                                                   const EnumLimits& lim = {});

// Exact counts to arbitrary degree via the factor-avoidance automaton.
// Only meaningful for fully complete systems; throws otherwise.
std::vector<unsigned long long> counts_by_automaton(const RewritingSystem& rs,
                                                    unsigned max_degree);

}  // namespace nckit
