#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "cgs/error.hpp"
#include "cgs/functor.hpp"

namespace cgs {

/// An element of H^n(X) or H_X^n(X): a completed play of at most n steps, or a
/// partial play of exactly n steps.
///
/// Decorated plays keep every controller state x_0 a_1 x_1 ... a_k x_k [b].
/// Undecorated plays keep only the observations and, while partial, the
/// current state; this is the carrier A^{<n}B + A^n X of the plain iteration.
struct Play {
  std::vector<StateId> states;
  std::vector<ObsId> obs;
  std::optional<ObsId> end;

  static Play start(StateId x) { return Play{{x}, {}, std::nullopt}; }

  bool complete() const { return end.has_value(); }

  /// Number of controller-environment interactions taken.
  std::size_t length() const { return obs.size() + (end ? 1 : 0); }

  StateId last_state() const {
    if (complete() || states.empty()) throw Error("last_state of a completed play");
    return states.back();
  }

  friend bool operator==(const Play&, const Play&) = default;
  friend auto operator<=>(const Play&, const Play&) = default;
};

/// Appends one move to a partial play.
inline Play extend(const Play& p, const HStep& h, bool decorated) {
  Play q = p;
  if (h.is_stop()) {
    q.end = h.obs;
    if (!decorated) q.states.clear();
  } else {
    q.obs.push_back(h.obs);
    if (decorated)
      q.states.push_back(*h.next);
    else
      q.states = {*h.next};
  }
  return q;
}

/// A finite trace a_1 ... a_k b.
struct Trace {
  std::vector<ObsId> body;
  ObsId end = 0;

  std::size_t length() const { return body.size() + 1; }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace&, const Trace&) = default;
};

/// The state-forgetting projection (XA)^*XB → A^*B.
inline Trace to_trace(const Play& p) {
  if (!p.complete()) throw Error("to_trace of an incomplete play");
  return Trace{p.obs, *p.end};
}

}  // namespace cgs
