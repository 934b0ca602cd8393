/**
 * @file marriage.cpp
 * @brief 2-marriage counting, the two-subset union condition, and colored
 *        matching extraction/validation over exact piecewise maps.
 */
#include "paradec/marriage.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "paradec/errors.hpp"

namespace paradec {

namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Validates that a caller-supplied cache belongs to `t`, falling back to
/// the local scratch cache when none was supplied.
TranslateCache& bind_cache(const TranslatingSet& t, TranslateCache* cache,
                           TranslateCache& local) {
  if (cache == nullptr) return local;
  if (&cache->set() != &t)
    throw ConfigError("translate cache is bound to a different translating set");
  return *cache;
}

}  // namespace

FiniteSubset::FiniteSubset(std::vector<PiecewiseMap> elems,
                           std::vector<std::string> words) {
  if (!words.empty() && words.size() != elems.size())
    throw ConfigError("source words must be empty or match the element count");
  std::vector<std::string> keys(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) keys[i] = elems[i].key();
  std::vector<std::size_t> order(elems.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
  for (std::size_t idx : order) {
    if (!keys_.empty() && keys_.back() == keys[idx]) continue;  // first copy wins
    elems_.push_back(std::move(elems[idx]));
    keys_.push_back(std::move(keys[idx]));
    if (!words.empty()) words_.push_back(std::move(words[idx]));
  }
}

bool FiniteSubset::contains_key(const std::string& key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

FiniteSubset ball(const std::vector<PiecewiseMap>& gens, int radius) {
  if (radius < 0) throw ConfigError("ball radius must be nonnegative");
  std::vector<PiecewiseMap> step;
  step.reserve(2 * gens.size());
  for (const auto& g : gens) {
    step.push_back(g);
    step.push_back(pw_invert(g));
  }
  std::map<std::string, PiecewiseMap> seen;
  std::vector<PiecewiseMap> frontier{PiecewiseMap::identity()};
  seen.emplace(frontier.front().key(), frontier.front());
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<PiecewiseMap> next;
    for (const auto& g : frontier)
      for (const auto& s : step) {
        PiecewiseMap p = pw_compose(g, s);
        std::string key = p.key();
        if (seen.emplace(std::move(key), p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  std::vector<PiecewiseMap> out;
  out.reserve(seen.size());
  for (auto& kv : seen) out.push_back(std::move(kv.second));
  return FiniteSubset(std::move(out));
}

TranslatingSet::TranslatingSet(std::vector<PiecewiseMap> elements,
                               std::vector<std::string> source_words,
                               GeneratorPair gens, Rational i_lo, Rational i_hi,
                               Rational delta, Rational epsilon)
    : elems_(std::move(elements)),
      words_(std::move(source_words)),
      gens_(std::move(gens)),
      i_lo_(std::move(i_lo)),
      i_hi_(std::move(i_hi)),
      delta_(std::move(delta)),
      epsilon_(std::move(epsilon)) {
  std::vector<std::string> violations;
  if (elems_.size() != 12) {
    std::ostringstream os;
    os << "expected 12 elements, got " << elems_.size();
    violations.push_back(os.str());
  }
  if (words_.size() != 12) {
    std::ostringstream os;
    os << "expected 12 source words, got " << words_.size();
    violations.push_back(os.str());
  }
  if (!(i_lo_ < i_hi_)) violations.push_back("interval is empty");
  if (!(epsilon_ > Rational(0) && epsilon_ < Rational(1)))
    violations.push_back("epsilon outside (0, 1)");
  if (!(delta_ > Rational(0))) violations.push_back("delta is not positive");

  std::vector<std::string> keys(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    keys[i] = elems_[i].key();
    if (elems_[i].is_identity()) {
      std::ostringstream os;
      os << "element " << i << " is the identity";
      violations.push_back(os.str());
    }
  }
  for (std::size_t i = 0; i < elems_.size(); ++i)
    for (std::size_t j = i + 1; j < elems_.size(); ++j)
      if (keys[i] == keys[j]) {
        std::ostringstream os;
        os << "elements " << i << " and " << j << " are equal";
        violations.push_back(os.str());
      }

  if (words_.size() == elems_.size() && i_lo_ < i_hi_) {
    const RealAlgebraic lo(i_lo_), hi(i_hi_);
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      bool agrees = true;
      try {
        const Mat2 m = eval_word(words_[k], gens_);
        const auto& bs = elems_[k].breakpoints();
        const auto& ps = elems_[k].pieces();
        for (std::size_t p = 0; p < ps.size() && agrees; ++p) {
          const bool meets = (p == 0 || bs[p - 1] < hi) &&
                             (p + 1 == ps.size() || lo < bs[p]);
          if (meets && !(ps[p] == m)) agrees = false;
        }
      } catch (const ConfigError&) {
        agrees = false;  // unparseable source word
      }
      if (!agrees) {
        std::ostringstream os;
        os << "element " << k << " disagrees with its source word on the interval";
        violations.push_back(os.str());
      }
    }
  }

  if (!violations.empty()) {
    std::string msg = "translating set invariants violated: ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i > 0) msg += "; ";
      msg += violations[i];
    }
    throw ConfigError(msg);
  }
}

const TranslateCache::Row& TranslateCache::row(const PiecewiseMap& g) {
  std::string g_key = g.key();
  const auto it = memo_.find(g_key);
  if (it != memo_.end()) return it->second;
  Row r;
  r.maps.reserve(t_->elements().size() + 1);
  r.keys.reserve(t_->elements().size() + 1);
  r.maps.push_back(g);
  r.keys.push_back(g_key);
  for (const PiecewiseMap& s : t_->elements()) {
    r.maps.push_back(pw_compose(g, s));
    r.keys.push_back(r.maps.back().key());
  }
  return memo_.emplace(std::move(g_key), std::move(r)).first->second;
}

MarriageReport check_2marriage(const TranslatingSet& t, const FiniteSubset& u,
                               TranslateCache* cache) {
  TranslateCache local(t);
  TranslateCache& memo = bind_cache(t, cache, local);
  MarriageReport r;
  r.rhs = 2 * u.size();
  std::set<std::string> translates;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& row = memo.row(u.elements()[i]);
    translates.insert(row.keys.begin(), row.keys.end());
  }
  r.lhs = translates.size();
  r.pass = r.lhs >= r.rhs;
  if (!r.pass)
    for (std::size_t s = 0; s <= t.elements().size(); ++s)
      for (std::size_t i = 0; i < u.size(); ++i)
        r.witness.push_back({s, i, memo.row(u.elements()[i]).maps[s]});
  return r;
}

EgsReport check_egs_condition(const TranslatingSet& t, const FiniteSubset& u1,
                              const FiniteSubset& u2, TranslateCache* cache) {
  TranslateCache local(t);
  TranslateCache& memo = bind_cache(t, cache, local);
  EgsReport r;
  r.rhs = u1.size() + u2.size();

  std::set<std::string> lhs_set;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const auto& row = memo.row(u1.elements()[i]);  // all of S1, identity included
    lhs_set.insert(row.keys.begin(), row.keys.end());
  }
  for (std::size_t i = 0; i < u2.size(); ++i) {
    const auto& row = memo.row(u2.elements()[i]);  // S2 = T drops the identity
    lhs_set.insert(row.keys.begin() + 1, row.keys.end());
  }
  r.lhs = lhs_set.size();

  std::map<std::string, const PiecewiseMap*> join;  // u1 ∪ u2 by key
  for (std::size_t i = 0; i < u1.size(); ++i)
    join.emplace(u1.key_of(i), &u1.elements()[i]);
  for (std::size_t i = 0; i < u2.size(); ++i)
    join.emplace(u2.key_of(i), &u2.elements()[i]);
  std::set<std::string> mid_set;
  for (const auto& kv : join) {
    const auto& row = memo.row(*kv.second);
    mid_set.insert(row.keys.begin() + 1, row.keys.end());
  }
  for (std::size_t i = 0; i < u1.size(); ++i) mid_set.insert(u1.key_of(i));
  r.mid = mid_set.size();

  r.identity_holds = r.lhs == r.mid;
  r.inequality_holds = r.mid >= r.rhs;
  r.pass = r.identity_holds && r.inequality_holds;
  return r;
}

MatchingOutcome extract_matching(const TranslatingSet& t,
                                 const FiniteSubset& u1, const FiniteSubset& u2,
                                 TranslateCache* cache) {
  TranslateCache local(t);
  TranslateCache& memo = bind_cache(t, cache, local);
  const std::size_t n1 = u1.size(), n_left = n1 + u2.size();
  const std::size_t n_s = t.elements().size();

  // Left vertex l: element left_of(l) of u1 (l < n1, color 1, translators
  // S1 = indices 0..12) or of u2 (color 2, translators 1..12 only).
  const auto left_of = [&](std::size_t l) -> const PiecewiseMap& {
    return l < n1 ? u1.elements()[l] : u2.elements()[l - n1];
  };
  std::vector<PiecewiseMap> right_maps;
  std::map<std::string, std::size_t> right_id;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n_left);
  for (std::size_t l = 0; l < n_left; ++l) {
    const auto& row = memo.row(left_of(l));
    for (std::size_t s = (l < n1 ? 0 : 1); s <= n_s; ++s) {
      auto [it, fresh] = right_id.emplace(row.keys[s], right_maps.size());
      if (fresh) right_maps.push_back(row.maps[s]);
      adj[l].push_back({s, it->second});
    }
  }

  // Hopcroft-Karp.
  std::vector<std::size_t> match_l(n_left, kUnmatched);
  std::vector<std::size_t> match_r(right_maps.size(), kUnmatched);
  std::vector<std::size_t> layer(n_left);
  const std::size_t kInf = std::numeric_limits<std::size_t>::max();

  const auto bfs = [&]() {
    std::queue<std::size_t> q;
    bool reachable_free = false;
    for (std::size_t l = 0; l < n_left; ++l) {
      layer[l] = match_l[l] == kUnmatched ? 0 : kInf;
      if (layer[l] == 0) q.push(l);
    }
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (const auto& [s, r] : adj[l]) {
        const std::size_t m = match_r[r];
        if (m == kUnmatched) {
          reachable_free = true;
        } else if (layer[m] == kInf) {
          layer[m] = layer[l] + 1;
          q.push(m);
        }
      }
    }
    return reachable_free;
  };
  const std::function<bool(std::size_t)> augment = [&](std::size_t l) {
    for (const auto& [s, r] : adj[l]) {
      const std::size_t m = match_r[r];
      if (m == kUnmatched || (layer[m] == layer[l] + 1 && augment(m))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    layer[l] = kInf;
    return false;
  };
  while (bfs())
    for (std::size_t l = 0; l < n_left; ++l)
      if (match_l[l] == kUnmatched) augment(l);

  MatchingOutcome out;
  out.matched = std::none_of(match_l.begin(), match_l.end(), [](std::size_t r) {
    return r == kUnmatched;
  });

  if (out.matched) {
    MatchingCertificate cert;
    cert.u1 = u1;
    cert.u2 = u2;
    for (std::size_t l = 0; l < n_left; ++l) {
      const auto hit = std::find_if(adj[l].begin(), adj[l].end(),
                                    [&](const std::pair<std::size_t, std::size_t>& e) {
                                      return e.second == match_l[l];
                                    });
      const std::size_t s = hit->first;
      cert.edges.push_back({l < n1 ? 1 : 2, left_of(l),
                            s == 0 ? PiecewiseMap::identity()
                                   : t.elements()[s - 1],
                            right_maps[match_l[l]]});
    }
    out.certificate = std::move(cert);
    return out;
  }

  // Hall violator: left vertices reachable from the unmatched ones by
  // alternating paths (any edge rightward, matching edges leftward).  Every
  // reached right vertex is matched back into the set, so the neighborhood
  // count falls short of the violator count by the number of free lefts.
  std::vector<bool> seen_l(n_left, false);
  std::vector<bool> seen_r(right_maps.size(), false);
  std::queue<std::size_t> q;
  for (std::size_t l = 0; l < n_left; ++l)
    if (match_l[l] == kUnmatched) {
      seen_l[l] = true;
      q.push(l);
    }
  while (!q.empty()) {
    const std::size_t l = q.front();
    q.pop();
    for (const auto& [s, r] : adj[l]) {
      if (seen_r[r]) continue;
      seen_r[r] = true;
      const std::size_t m = match_r[r];
      if (m != kUnmatched && !seen_l[m]) {
        seen_l[m] = true;
        q.push(m);
      }
    }
  }
  std::vector<PiecewiseMap> v1, v2;
  for (std::size_t l = 0; l < n_left; ++l)
    if (seen_l[l]) (l < n1 ? v1 : v2).push_back(left_of(l));
  out.violating_u1 = FiniteSubset(std::move(v1));
  out.violating_u2 = FiniteSubset(std::move(v2));
  out.violator_size = out.violating_u1.size() + out.violating_u2.size();
  out.neighborhood_size =
      static_cast<std::size_t>(std::count(seen_r.begin(), seen_r.end(), true));
  return out;
}

ValidationReport validate_certificate(const TranslatingSet& t,
                                      const MatchingCertificate& cert) {
  ValidationReport rep;
  const auto note = [&rep](const std::string& s) { rep.violations.push_back(s); };

  if (cert.edges.size() != cert.u1.size() + cert.u2.size()) {
    std::ostringstream os;
    os << "expected " << cert.u1.size() + cert.u2.size() << " edges, got "
       << cert.edges.size();
    note(os.str());
  }

  std::set<std::string> s_keys;  // T by canonical key; S1 adds the identity
  for (const auto& e : t.elements()) s_keys.insert(e.key());
  const std::string id_key = PiecewiseMap::identity().key();

  std::map<std::string, int> cover1, cover2;  // left-vertex key -> edge count
  std::map<std::string, std::size_t> target_seen;
  for (std::size_t k = 0; k < cert.edges.size(); ++k) {
    const MatchingEdge& e = cert.edges[k];
    std::ostringstream tag;
    tag << "edge " << k << ": ";
    if (e.color != 1 && e.color != 2) {
      note(tag.str() + "color is neither 1 nor 2");
      continue;
    }
    const FiniteSubset& u = e.color == 1 ? cert.u1 : cert.u2;
    const std::string left_key = e.left.key();
    if (!u.contains_key(left_key))
      note(tag.str() + "left element is not a member of u" +
           (e.color == 1 ? "1" : "2"));
    else
      ++(e.color == 1 ? cover1 : cover2)[left_key];

    const std::string trans_key = e.translator.key();
    const bool member = s_keys.count(trans_key) > 0 ||
                        (e.color == 1 && trans_key == id_key);
    if (!member)
      note(tag.str() + "translator is not a member of S" +
           (e.color == 1 ? "1" : "2"));

    if (!pw_equal(pw_compose(e.left, e.translator), e.target))
      note(tag.str() + "target differs from the recomputed product");

    const auto [it, fresh] = target_seen.emplace(e.target.key(), k);
    if (!fresh) {
      std::ostringstream os;
      os << "targets of edges " << it->second << " and " << k << " collide";
      note(os.str());
    }
  }

  for (int color = 1; color <= 2; ++color) {
    const FiniteSubset& u = color == 1 ? cert.u1 : cert.u2;
    const auto& cover = color == 1 ? cover1 : cover2;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto it = cover.find(u.key_of(i));
      const int n = it == cover.end() ? 0 : it->second;
      if (n != 1) {
        std::ostringstream os;
        os << "element " << i << " of u" << color << " is covered by " << n
           << " color-" << color << " edges";
        note(os.str());
      }
    }
  }
  return rep;
}

}  // namespace paradec
