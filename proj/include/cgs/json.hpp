#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"
#include "cgs/game.hpp"
#include "cgs/play.hpp"
#include "cgs/rational.hpp"
#include "cgs/strategy.hpp"

namespace cgs::json {

using Json = nlohmann::ordered_json;

/// Renders observations and states by name.
class Namer {
 public:
  Namer(const Alphabets& ab, const std::vector<std::string>& states) : ab_(ab), states_(states) {}
  explicit Namer(const Coalgebra& c) : Namer(c.alphabets, c.states) {}

  /// a1.a2.b as "a1.a2#b"; a lone b as "#b".
  std::string operator()(const Trace& t) const {
    std::string out;
    for (std::size_t i = 0; i < t.body.size(); ++i) out += (i ? "." : "") + ab_.name(t.body[i]);
    return out + "#" + ab_.name(t.end);
  }

  /// Executions as "x0.a1.x1#b", partial plays as "x0.a1.x1". Undecorated
  /// partial plays only know their current state and render as "a1.x1".
  std::string operator()(const Play& p) const {
    std::string out;
    const bool decorated = p.states.size() == p.obs.size() + 1;
    if (decorated) {
      out = states_.at(p.states[0]);
      for (std::size_t i = 0; i < p.obs.size(); ++i) out += "." + ab_.name(p.obs[i]) + "." + states_.at(p.states[i + 1]);
    } else {
      for (std::size_t i = 0; i < p.obs.size(); ++i) out += (i ? "." : "") + ab_.name(p.obs[i]);
      if (!p.states.empty()) out += (p.obs.empty() ? "" : ".") + states_.at(p.states.back());
    }
    if (p.end) out += "#" + ab_.name(*p.end);
    return out;
  }

  /// Go(a, x) as "a->x", Stop(b) as "b".
  std::string operator()(const HStep& h) const {
    return h.is_stop() ? ab_.name(h.obs) : ab_.name(h.obs) + "->" + states_.at(*h.next);
  }

 private:
  const Alphabets& ab_;
  const std::vector<std::string>& states_;
};

inline Json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

/// Set-like collections become sorted string arrays; distributions become
/// {"elems":[{"t":..,"num":..,"den":..}]} sorted by rendered element.
template <class E, class Name>
Json collection(const Collection<E>& u, const Name& name) {
  if (is_set_like(u.mode())) {
    std::vector<std::string> elems;
    for (const auto& [e, w] : u) elems.push_back(name(e));
    std::sort(elems.begin(), elems.end());
    return Json(elems);
  }
  std::vector<std::pair<std::string, Rational>> elems;
  for (const auto& [e, w] : u) elems.emplace_back(name(e), w);
  std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json arr = Json::array();
  for (const auto& [t, w] : elems) arr.push_back(Json{{"t", t}, {"num", integer(w.num())}, {"den", integer(w.den())}});
  return Json{{"elems", std::move(arr)}};
}

/// {"mode":"Q","generators":[...]} with generators sorted by their serialisation.
template <class E, class Name>
Json convex_set(const ConvexSet<E>& s, const Name& name) {
  std::vector<std::pair<std::string, Json>> gens;
  for (const auto& u : s) {
    auto j = collection(u, name);
    gens.emplace_back(j.dump(), std::move(j));
  }
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json arr = Json::array();
  for (auto& [key, j] : gens) arr.push_back(std::move(j));
  return Json{{"mode", std::string(to_string(s.mode()))}, {"generators", std::move(arr)}};
}

inline Json strategy(const NStepStrategy& s, const Namer& name, const std::vector<std::string>& states) {
  Json table = Json::array();
  for (const auto& [history, choice] : s.choice)
    table.push_back(Json{{"history", name(history)}, {"choice", collection(choice, name)}});
  return Json{{"start", states.at(s.start)}, {"depth", s.depth}, {"table", std::move(table)}};
}

}  // namespace cgs::json
