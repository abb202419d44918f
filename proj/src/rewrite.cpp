#include "nckit/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace nckit {

namespace {

using TermMap = NcPoly::TermMap;

// Make an oriented rule out of a nonzero polynomial: leading coefficient 1,
// lhs = leading word, rhs = lhs - monic(p).
Rule orient(const NcPoly& p) {
  const auto& [lw, lc] = p.leading();
  NcPoly rhs = p.scaled(-lc.inverse());
  rhs.add_term(lw, CycloScalar(1));  // cancels the (negated) leading term
  return Rule{lw, rhs};
}

bool is_suffix(const Word& tail, const Word& w) {
  if (tail.length() > w.length()) return false;
  return std::equal(tail.letters.begin(), tail.letters.end(),
                    w.letters.end() - tail.length());
}

bool ends_reducible(const Word& w, const RewritingSystem& rs) {
  for (const Rule& r : rs.rules)
    if (is_suffix(r.lhs, w)) return true;
  return false;
}

// First (position, rule) at which any lhs matches inside w; rule order breaks
// position ties.  Returns rule index or -1.
int find_reduction(const Word& w, const RewritingSystem& rs, size_t* pos_out) {
  for (size_t pos = 0; pos < w.length(); ++pos) {
    for (unsigned ri : rs.by_first[w.letters[pos]]) {
      const Word& lhs = rs.rules[ri].lhs;
      if (lhs.length() > w.length() - pos) continue;
      if (std::equal(lhs.letters.begin(), lhs.letters.end(), w.letters.begin() + pos)) {
        *pos_out = pos;
        return static_cast<int>(ri);
      }
    }
  }
  return -1;
}

NcPoly reduce(const NcPoly& p, const RewritingSystem& rs) {
  const auto alpha = p.alphabet_ptr();
  if (rs.collapsed) return NcPoly::zero(alpha);
  NcPoly result(alpha);
  TermMap work(p.terms().begin(), p.terms().end(), DeglexLess{alpha.get()});
  while (!work.empty()) {
    auto top = std::prev(work.end());
    Word w = top->first;
    CycloScalar c = top->second;
    work.erase(top);
    size_t pos = 0;
    int ri = find_reduction(w, rs, &pos);
    if (ri < 0) {
      result.add_term(w, c);
      continue;
    }
    const Rule& rule = rs.rules[ri];
    Word left = subword(w, 0, pos);
    Word right = subword(w, pos + rule.lhs.length(), w.length() - pos - rule.lhs.length());
    for (const auto& [t, ct] : rule.rhs.terms()) {
      Word nw = cat(cat(left, t), right);
      CycloScalar nc = c * ct;
      auto it = work.find(nw);
      if (it == work.end()) {
        if (!nc.is_zero()) work.emplace(std::move(nw), std::move(nc));
      } else {
        it->second += nc;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return result;
}

struct OverlapKey {
  std::vector<uint32_t> a, b;
  size_t shift;
  bool operator<(const OverlapKey& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return shift < o.shift;
  }
};

// Proper overlaps: a suffix of `a` of length L (0 < L < min(|a|,|b|)) equals
// a prefix of `b`.  Inclusion overlaps never survive interreduction.
std::vector<size_t> proper_overlaps(const Word& a, const Word& b) {
  std::vector<size_t> ls;
  size_t mx = std::min(a.length(), b.length());
  for (size_t l = 1; l < mx; ++l) {
    if (std::equal(b.letters.begin(), b.letters.begin() + l, a.letters.end() - l))
      ls.push_back(l);
  }
  return ls;
}

// S-polynomial of the overlap: a at position 0 and b at position shift inside
// the overlap word; both rules rewrite it, the difference must die.
NcPoly s_poly(const std::shared_ptr<const Alphabet>& alpha, const Rule& ra,
              const Rule& rb, const Word& overlap, size_t shift) {
  Word right_tail = subword(overlap, ra.lhs.length(), overlap.length() - ra.lhs.length());
  Word left_head = subword(overlap, 0, shift);
  NcPoly via_a = ra.rhs * NcPoly::monomial(alpha, right_tail, CycloScalar(1));
  NcPoly via_b = NcPoly::monomial(alpha, left_head, CycloScalar(1)) * rb.rhs;
  return via_a - via_b;
}

// Shared BFS over normal words: invokes sink(word) for every normal word of
// degree <= max_degree, in length-then-discovery order.
template <typename Sink>
void walk_normal_words(const RewritingSystem& rs, unsigned max_degree,
                       const EnumLimits& lim, Sink&& sink) {
  if (rs.collapsed) return;
  const Alphabet& a = *rs.alpha;
  std::deque<Word> queue;
  queue.push_back(Word());
  sink(queue.front());
  size_t seen = 1;
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    unsigned wd = w.degree(a);
    for (uint32_t l = 0; l < a.size(); ++l) {
      if (wd + a.degrees[l] > max_degree) continue;
      Word ext = w;
      ext.letters.push_back(l);
      // ext is reducible iff some lhs is a suffix (the prefix w is normal)
      if (ends_reducible(ext, rs)) continue;
      if (++seen > lim.max_words)
        fail(ErrorKind::Budget,
             "normal word enumeration exceeded its cap (degree-0 letters can "
             "make graded components infinite)");
      sink(ext);
      queue.push_back(std::move(ext));
    }
  }
}

}  // namespace

void RewritingSystem::reindex() {
  by_first.assign(alpha->size(), {});
  for (unsigned i = 0; i < rules.size(); ++i) {
    if (rules[i].lhs.empty()) fail(ErrorKind::Inconsistent, "rule with empty lhs");
    by_first[rules[i].lhs.letters[0]].push_back(i);
  }
}

NcPoly normal_form(const NcPoly& p, const RewritingSystem& rs) {
  for (const auto& [w, c] : p.terms()) {
    if (w.degree(*rs.alpha) > rs.degree_bound)
      fail(ErrorKind::Truncation,
           "term of degree " + std::to_string(w.degree(*rs.alpha)) +
               " exceeds the degree bound " + std::to_string(rs.degree_bound));
  }
  return reduce(p, rs);
}

RewritingSystem complete(std::shared_ptr<const Alphabet> alpha,
                         const std::vector<NcPoly>& relations, unsigned degree_bound,
                         const CompletionLimits& lim) {
  RewritingSystem rs;
  rs.alpha = alpha;
  rs.degree_bound = degree_bound;
  rs.reindex();

  auto collapse = [&]() {
    rs.rules.clear();
    rs.collapsed = true;
    rs.complete_to = degree_bound;
    rs.fully_complete = true;
    rs.reindex();
  };

  // Returns true if a rule was added; collapses the system on a unit.
  auto add_reduced = [&](const NcPoly& p) {
    if (p.is_zero()) return false;
    if (p.leading().first.empty()) {
      collapse();
      return true;
    }
    rs.rules.push_back(orient(p));
    if (rs.rules.size() > lim.max_rules)
      fail(ErrorKind::Budget, "completion exceeded the rule budget");
    rs.reindex();
    return true;
  };

  for (const NcPoly& r : relations) {
    if (r.is_zero()) continue;
    if (!r.homogeneous_degree())
      fail(ErrorKind::BadInput, "relation is not homogeneous: " + r.str());
    if (r.degree() > degree_bound)
      fail(ErrorKind::Truncation, "relation degree exceeds the degree bound");
    add_reduced(reduce(r, rs));
    if (rs.collapsed) return rs;
  }

  // Interreduce: every lhs irreducible by the other rules, every rhs in
  // normal form.  Rules are reduced in place so one sweep visits each rule.
  auto interreduce = [&]() {
    bool changed = true;
    size_t sweeps = 0;
    while (changed && !rs.collapsed) {
      changed = false;
      if (++sweeps > lim.max_passes)
        fail(ErrorKind::Budget, "interreduction did not stabilize");
      for (size_t i = 0; i < rs.rules.size(); ++i) {
        Rule r = rs.rules[i];
        rs.rules.erase(rs.rules.begin() + i);
        rs.reindex();
        NcPoly full = NcPoly::monomial(alpha, r.lhs, CycloScalar(1)) - r.rhs;
        NcPoly red = reduce(full, rs);
        if (red.is_zero()) {
          changed = true;
          --i;
          continue;
        }
        if (red.leading().first.empty()) {
          collapse();
          return;
        }
        Rule nr = orient(red);
        bool same = nr.lhs == r.lhs && nr.rhs == r.rhs;
        rs.rules.insert(rs.rules.begin() + i, std::move(nr));
        rs.reindex();
        if (!same) changed = true;
      }
    }
  };

  std::set<OverlapKey> resolved;
  size_t passes = 0;
  while (!rs.collapsed) {
    if (++passes > lim.max_passes)
      fail(ErrorKind::Budget, "completion did not stabilize within the pass budget");
    interreduce();
    if (rs.collapsed) break;

    // Smallest unresolved overlap words first: a deterministic and
    // degree-compatible completion path.
    struct Pending {
      Word overlap;
      Rule a, b;
      size_t shift;
    };
    std::vector<Pending> pending;
    for (const Rule& ra : rs.rules) {
      for (const Rule& rb : rs.rules) {
        for (size_t l : proper_overlaps(ra.lhs, rb.lhs)) {
          size_t shift = ra.lhs.length() - l;
          Word w = cat(subword(ra.lhs, 0, shift), rb.lhs);
          if (w.degree(*alpha) > degree_bound) continue;
          if (resolved.count(OverlapKey{ra.lhs.letters, rb.lhs.letters, shift})) continue;
          pending.push_back(Pending{std::move(w), ra, rb, shift});
        }
      }
    }
    std::sort(pending.begin(), pending.end(), [&](const Pending& x, const Pending& y) {
      int c = deglex_compare(x.overlap, y.overlap, *alpha);
      if (c != 0) return c < 0;
      if (x.a.lhs.letters != y.a.lhs.letters) return x.a.lhs.letters < y.a.lhs.letters;
      if (x.b.lhs.letters != y.b.lhs.letters) return x.b.lhs.letters < y.b.lhs.letters;
      return x.shift < y.shift;
    });

    bool added = false;
    for (const Pending& p : pending) {
      NcPoly s = reduce(s_poly(alpha, p.a, p.b, p.overlap, p.shift), rs);
      resolved.insert(OverlapKey{p.a.lhs.letters, p.b.lhs.letters, p.shift});
      if (add_reduced(s)) {
        added = true;
        break;  // the rule set changed; re-enumerate overlaps
      }
    }
    if (rs.collapsed) break;
    if (added) continue;

    // Certification sweep, independent of the `resolved` bookkeeping: every
    // in-bound overlap among the final rules must reduce to zero right now.
    bool clean = true;
    for (const Rule& ra : rs.rules) {
      for (const Rule& rb : rs.rules) {
        for (size_t l : proper_overlaps(ra.lhs, rb.lhs)) {
          size_t shift = ra.lhs.length() - l;
          Word w = cat(subword(ra.lhs, 0, shift), rb.lhs);
          if (w.degree(*alpha) > degree_bound) continue;
          if (!reduce(s_poly(alpha, ra, rb, w, shift), rs).is_zero()) {
            resolved.erase(OverlapKey{ra.lhs.letters, rb.lhs.letters, shift});
            clean = false;
          }
        }
      }
    }
    if (clean) break;
  }

  rs.complete_to = degree_bound;
  if (!rs.collapsed) {
    rs.fully_complete = true;
    for (const Rule& ra : rs.rules) {
      for (const Rule& rb : rs.rules) {
        for (size_t l : proper_overlaps(ra.lhs, rb.lhs)) {
          Word w = cat(subword(ra.lhs, 0, ra.lhs.length() - l), rb.lhs);
          if (w.degree(*alpha) > degree_bound) rs.fully_complete = false;
        }
      }
    }
    std::sort(rs.rules.begin(), rs.rules.end(), [&](const Rule& x, const Rule& y) {
      return deglex_compare(x.lhs, y.lhs, *alpha) < 0;
    });
    rs.reindex();
  }
  return rs;
}

std::vector<Word> normal_words(const RewritingSystem& rs, unsigned degree,
                               const EnumLimits& lim) {
  std::vector<Word> bucket;
  walk_normal_words(rs, degree, lim, [&](const Word& w) {
    if (w.degree(*rs.alpha) == degree) bucket.push_back(w);
  });
  std::sort(bucket.begin(), bucket.end(), [&](const Word& u, const Word& v) {
    return deglex_compare(u, v, *rs.alpha) < 0;
  });
  return bucket;
}

std::vector<unsigned long long> normal_word_counts(const RewritingSystem& rs,
                                                   unsigned max_degree,
                                                   const EnumLimits& lim) {
  std::vector<unsigned long long> counts(max_degree + 1, 0);
  walk_normal_words(rs, max_degree, lim,
                    [&](const Word& w) { ++counts[w.degree(*rs.alpha)]; });
  return counts;
}

std::vector<unsigned long long> counts_by_automaton(const RewritingSystem& rs,
                                                    unsigned max_degree) {
  if (rs.collapsed) return std::vector<unsigned long long>(max_degree + 1, 0);
  if (!rs.fully_complete)
    fail(ErrorKind::Truncation,
         "automaton counting requires a fully complete rewriting system");
  const Alphabet& a = *rs.alpha;

  // States: proper prefixes of rule lhs words (the empty word included).
  std::map<std::vector<uint32_t>, unsigned> state_id;
  std::vector<Word> states;
  auto intern = [&](const Word& w) {
    auto [it, fresh] = state_id.emplace(w.letters, states.size());
    if (fresh) states.push_back(w);
    return it->second;
  };
  intern(Word());
  for (const Rule& r : rs.rules)
    for (size_t l = 1; l < r.lhs.length(); ++l) intern(subword(r.lhs, 0, l));

  auto longest_state_suffix = [&](const Word& w) -> unsigned {
    for (size_t l = w.length();; --l) {
      auto it = state_id.find(subword(w, w.length() - l, l).letters);
      if (it != state_id.end()) return it->second;
      if (l == 0) fail(ErrorKind::Inconsistent, "automaton state resolution failed");
    }
  };

  // transitions[s][letter] = target state, or -1 when the extension would
  // contain a rule lhs
  std::vector<std::vector<int>> next(states.size(), std::vector<int>(a.size(), -1));
  for (unsigned s = 0; s < states.size(); ++s) {
    for (uint32_t l = 0; l < a.size(); ++l) {
      Word w = states[s];
      w.letters.push_back(l);
      if (ends_reducible(w, rs)) continue;
      next[s][l] = static_cast<int>(longest_state_suffix(w));
    }
  }

  // Degree-0 letters give weight-0 edges; they must form a DAG or some graded
  // component is infinite dimensional.
  std::vector<unsigned> topo;
  {
    std::vector<unsigned> indeg(states.size(), 0);
    for (unsigned s = 0; s < states.size(); ++s)
      for (uint32_t l = 0; l < a.size(); ++l)
        if (a.degrees[l] == 0 && next[s][l] >= 0) ++indeg[next[s][l]];
    std::deque<unsigned> q;
    for (unsigned s = 0; s < states.size(); ++s)
      if (indeg[s] == 0) q.push_back(s);
    while (!q.empty()) {
      unsigned s = q.front();
      q.pop_front();
      topo.push_back(s);
      for (uint32_t l = 0; l < a.size(); ++l)
        if (a.degrees[l] == 0 && next[s][l] >= 0 && --indeg[next[s][l]] == 0)
          q.push_back(static_cast<unsigned>(next[s][l]));
    }
    if (topo.size() != states.size())
      fail(ErrorKind::Degenerate, "degree-0 letters admit arbitrarily long normal words");
  }

  std::vector<std::vector<unsigned long long>> cnt(
      max_degree + 1, std::vector<unsigned long long>(states.size(), 0));
  cnt[0][0] = 1;
  std::vector<unsigned long long> totals(max_degree + 1, 0);
  for (unsigned d = 0; d <= max_degree; ++d) {
    for (unsigned s = 0; s < states.size(); ++s) {
      for (uint32_t l = 0; l < a.size(); ++l) {
        unsigned wl = a.degrees[l];
        if (wl == 0 || wl > d || next[s][l] < 0) continue;
        cnt[d][next[s][l]] += cnt[d - wl][s];
      }
    }
    for (unsigned s : topo) {
      if (cnt[d][s] == 0) continue;
      for (uint32_t l = 0; l < a.size(); ++l)
        if (a.degrees[l] == 0 && next[s][l] >= 0) cnt[d][next[s][l]] += cnt[d][s];
    }
    for (unsigned s = 0; s < states.size(); ++s) totals[d] += cnt[d][s];
  }
  return totals;
}

}  // namespace nckit
