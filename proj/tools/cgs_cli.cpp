#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgs/cgs.hpp"

namespace {

using cgs::json::Json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Loaded {
  cgs::BipartiteGame game;
  cgs::Coalgebra coalgebra;
};

// Parses and converts a game file. Parse and validation problems are usage errors.
Loaded load(const std::string& path) {
  Loaded out{cgs::dsl::load_game_file(path), {}};
  out.coalgebra = cgs::from_bipartite(out.game);
  return out;
}

template <class E, class Name>
std::string render(const cgs::Collection<E>& u, const Name& name) {
  std::vector<std::pair<std::string, cgs::Rational>> elems;
  for (const auto& [e, w] : u) elems.emplace_back(name(e), w);
  std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const bool prob = u.mode() == cgs::Mode::prob;
  std::string out = prob ? "[" : "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out += (i ? ", " : "") + elems[i].first;
    if (prob) out += ": " + elems[i].second.str();
  }
  return out + (prob ? "]" : "}");
}

template <class E, class Name>
void print_set(std::ostream& os, const cgs::ConvexSet<E>& s, const Name& name, const std::string& indent = "  ") {
  std::vector<std::string> lines;
  for (const auto& u : s) lines.push_back(render(u, name));
  std::sort(lines.begin(), lines.end());
  if (lines.empty()) os << indent << "(empty)\n";
  for (const auto& l : lines) os << indent << l << "\n";
}

std::set<cgs::Trace> read_traces(const std::string& path, const cgs::Alphabets& ab) {
  std::ifstream in(path);
  if (!in) throw cgs::Error("cannot open '" + path + "'");
  std::set<cgs::Trace> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    // "# text" is a comment; "#b" is the trace that stops at once with b.
    if (first == std::string::npos || (line[first] == '#' && (first + 1 == line.size() || line[first + 1] == ' ')))
      continue;
    const auto last = line.find_last_not_of(" \t\r");
    try {
      out.insert(cgs::dsl::parse_trace(ab, line.substr(first, last - first + 1)));
    } catch (const cgs::Error& e) {
      throw cgs::Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Json report_json(const cgs::Report<cgs::Play>& r, const cgs::json::Namer& name, const std::string& check) {
  Json j{{"check", check}, {"equal", r.equal}, {"strategy_outcomes", r.strategy_outcomes},
         {"lhs", cgs::json::convex_set(r.lhs, name)}, {"rhs", cgs::json::convex_set(r.rhs, name)}};
  if (r.witness) j["witness"] = Json{{"collection", cgs::json::collection(*r.witness, name)}, {"only_in", r.witness_in_lhs ? "lhs" : "rhs"}};
  return j;
}

Json report_json(const cgs::TraceReport& r, const cgs::json::Namer& name) {
  Json j{{"check", "corollary"}, {"equal", r.equal()}, {"strategy_outcomes", r.strategies.strategy_outcomes},
         {"lhs", cgs::json::convex_set(r.strategies.lhs, name)}, {"rhs", cgs::json::convex_set(r.strategies.rhs, name)},
         {"matches_trace_map", r.matches_trace_map}};
  if (r.strategies.witness)
    j["witness"] = Json{{"collection", cgs::json::collection(*r.strategies.witness, name)},
                        {"only_in", r.strategies.witness_in_lhs ? "lhs" : "rhs"}};
  return j;
}

template <class E>
void print_report(const std::string& check, const cgs::Report<E>& r, const cgs::json::Namer& name) {
  std::cout << check << ": " << (r.equal ? "equal" : "NOT equal") << " (" << r.strategy_outcomes << " strategy outcomes)\n";
  if (r.witness) std::cout << "  witness only in " << (r.witness_in_lhs ? "lhs" : "rhs") << ": " << render(*r.witness, name) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace semantics, strategies and synthesis for controller-versus-environment games"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string file, state, good_file, threshold_text, mode_text;
  unsigned depth = 0;
  bool as_json = false, count_only = false, lemma = false, theorem = false, corollary = false;
  std::uint64_t seed = 1;
  int bound = 3;
  std::size_t cases = 500;
  std::size_t cap = cgs::kDefaultStrategyCap;

  auto* validate = app.add_subcommand("validate", "Check a game file and list every structural problem");
  validate->add_option("file", file, "Game file")->required();

  auto add_query = [&](CLI::App* sub) {
    sub->add_option("file", file, "Game file")->required();
    sub->add_option("--state", state, "Controller state to start from")->required();
    sub->add_option("--depth", depth, "Unfolding depth n")->required();
  };
  auto* traces = app.add_subcommand("traces", "Depth-n trace approximant at a state");
  add_query(traces);
  traces->add_flag("--json", as_json, "Emit JSON");
  auto* execs = app.add_subcommand("execs", "Depth-n execution approximant at a state");
  add_query(execs);
  execs->add_flag("--json", as_json, "Emit JSON");

  auto* strategies = app.add_subcommand("strategies", "Enumerate the n-step strategies from a state");
  add_query(strategies);
  strategies->add_flag("--count-only", count_only, "Only print the number of strategies");
  strategies->add_flag("--json", as_json, "Emit JSON");
  strategies->add_option("--cap", cap, "Refuse to list more strategies than this");

  auto* verify = app.add_subcommand("verify", "Compare the iterated semantics with the outcomes of all strategies");
  add_query(verify);
  verify->add_flag("--lemma-main", lemma, "Unfolding of c* against n-step partial outcomes");
  verify->add_flag("--theorem-main", theorem, "Execution approximant against completed outcomes");
  verify->add_flag("--corollary", corollary, "Trace approximant against the traces of completed outcomes");
  verify->add_flag("--json", as_json, "Emit JSON");
  verify->add_option("--cap", cap, "Bound on the number of distinct strategy outcomes");

  auto* synth = app.add_subcommand("synth", "Find a strategy forcing good traces");
  add_query(synth);
  synth->add_option("--good", good_file, "File with one good trace per line, e.g. a.b#tick")->required();
  synth->add_option("--threshold", threshold_text, "Probabilistic games: required weight p/q of good traces");
  synth->add_flag("--json", as_json, "Emit JSON");

  auto* laws = app.add_subcommand("laws", "Run the algebraic law bench and counterexample reproductions");
  laws->add_option("--mode", mode_text, "q, d or lab (default: all)")->check(CLI::IsMember({"q", "d", "lab"}));
  laws->add_option("--seed", seed, "Seed for random instances");
  laws->add_option("--bound", bound, "Largest carrier enumerated exhaustively")->check(CLI::Range(1, 4));
  laws->add_option("--cases", cases, "Random instances per law");
  laws->add_flag("--json", as_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) {
      auto g = cgs::dsl::load_game_file(file);
      auto diags = cgs::validate(g);
      for (const auto& d : diags) std::cout << file << ": " << d.message << "\n";
      if (diags.empty()) std::cout << file << ": ok (" << g.controllers.size() << " controller states, "
                                   << g.environments.size() << " environment states)\n";
      return diags.empty() ? kOk : kFailed;
    }

    if (*laws) {
      std::vector<cgs::Mode> modes;
      if (mode_text.empty() || mode_text == "q") modes.push_back(cgs::Mode::nondet);
      if (mode_text.empty() || mode_text == "d") modes.push_back(cgs::Mode::prob);
      if (mode_text.empty() || mode_text == "lab") modes.push_back(cgs::Mode::lab);
      bool all = true;
      Json out = Json::array();
      for (auto m : modes) {
        for (const auto& r : cgs::laws::run_laws(m, seed, bound, cases)) {
          all = all && r.passed();
          if (as_json) {
            out.push_back(Json{{"name", r.name}, {"passed", r.passed()}, {"expected_to_hold", r.expected_to_hold},
                               {"holds", r.holds}, {"cases", r.cases}, {"seed", r.seed}, {"witness", r.witness},
                               {"note", r.note}});
            continue;
          }
          std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases";
          if (!r.expected_to_hold) std::cout << (r.holds ? ", expected a violation and found none" : ", expected violation reproduced");
          std::cout << ")\n";
          if (!r.witness.empty()) std::cout << "  witness: " << r.witness << "\n";
          if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
        }
      }
      if (as_json)
        std::cout << Json{{"seed", seed}, {"bound", bound}, {"reports", out}, {"documented", cgs::laws::kOmegaCpoNote}}.dump(2) << "\n";
      else
        std::cout << "documented: " << cgs::laws::kOmegaCpoNote << "\n";
      return all ? kOk : kFailed;
    }

    auto loaded = load(file);
    const auto& c = loaded.coalgebra;
    const auto x = c.state(state);
    cgs::json::Namer name(c);

    if (*traces) {
      auto r = cgs::traces(c, x, depth);
      if (as_json) {
        Json j = cgs::json::convex_set(r.value, name);
        j["stabilized"] = r.stabilized;
        j["state"] = state;
        j["depth"] = depth;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "traces of " << state << " to depth " << depth << " (" << cgs::to_string(c.mode)
                  << ", stabilized: " << (r.stabilized ? "yes" : "no") << ")\n";
        print_set(std::cout, r.value, name);
      }
      return kOk;
    }

    if (*execs) {
      auto r = cgs::executions(c, x, depth);
      if (as_json) {
        Json j = cgs::json::convex_set(r.value, name);
        j["stabilized"] = r.stabilized;
        j["state"] = state;
        j["depth"] = depth;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "executions of " << state << " to depth " << depth << " (" << cgs::to_string(c.mode)
                  << ", stabilized: " << (r.stabilized ? "yes" : "no") << ")\n";
        print_set(std::cout, r.value, name);
      }
      return kOk;
    }

    if (*strategies) {
      const auto count = cgs::count_strategies(c, x, depth);
      if (count_only) {
        if (as_json)
          std::cout << Json{{"state", state}, {"depth", depth}, {"count", count}}.dump() << "\n";
        else
          std::cout << count << "\n";
        return kOk;
      }
      auto all = cgs::enumerate_strategies(c, x, depth, cap);
      if (as_json) {
        Json arr = Json::array();
        for (const auto& s : all) {
          Json j = cgs::json::strategy(s, name, c.states);
          j["outcome"] = cgs::json::collection(cgs::plays_partial(c, s), name);
          arr.push_back(std::move(j));
        }
        std::cout << Json{{"state", state}, {"depth", depth}, {"count", count}, {"strategies", arr}}.dump(2) << "\n";
        return kOk;
      }
      std::cout << count << " strategies from " << state << " at depth " << depth << "\n";
      for (std::size_t i = 0; i < all.size(); ++i) {
        std::cout << "strategy " << i + 1 << "\n";
        for (const auto& [history, choice] : all[i].choice) std::cout << "  " << name(history) << " -> " << render(choice, name) << "\n";
        std::cout << "  outcome " << render(cgs::plays_partial(c, all[i]), name) << "\n";
      }
      return kOk;
    }

    if (*verify) {
      if (!lemma && !theorem && !corollary) lemma = theorem = corollary = true;
      bool ok = true;
      Json out = Json::array();
      if (lemma) {
        auto r = cgs::verify_lemma_main(c, x, depth, cap);
        ok = ok && r.equal;
        if (as_json) out.push_back(report_json(r, name, "lemma-main"));
        else print_report("lemma-main", r, name);
      }
      if (theorem) {
        auto r = cgs::verify_theorem_main(c, x, depth, cap);
        ok = ok && r.equal;
        if (as_json) out.push_back(report_json(r, name, "theorem-main"));
        else print_report("theorem-main", r, name);
      }
      if (corollary) {
        auto r = cgs::verify_traces_via_strategies(c, x, depth, cap);
        ok = ok && r.equal();
        if (as_json) {
          out.push_back(report_json(r, name));
        } else {
          print_report("corollary", r.strategies, name);
          std::cout << "  trace map " << (r.matches_trace_map ? "agrees" : "DISAGREES") << "\n";
        }
      }
      if (as_json) std::cout << Json{{"state", state}, {"depth", depth}, {"reports", out}}.dump(2) << "\n";
      return ok ? kOk : kFailed;
    }

    if (*synth) {
      auto good = read_traces(good_file, c.alphabets);
      cgs::SynthResult r;
      if (c.mode == cgs::Mode::prob) {
        if (threshold_text.empty()) throw CLI::ValidationError("--threshold", "probabilistic games need --threshold p/q");
        r = cgs::synthesize_threshold(c, x, good, cgs::Rational::parse(threshold_text), depth);
      } else {
        if (!threshold_text.empty()) throw CLI::ValidationError("--threshold", "only probabilistic games take a threshold");
        r = cgs::synthesize_forcing(c, x, good, depth);
      }
      if (as_json) {
        Json j{{"state", state}, {"depth", depth}, {"found", r.witness.has_value()}, {"stabilized", r.stabilized}};
        if (r.value) j["value"] = Json{{"num", cgs::json::integer(r.value->num())}, {"den", cgs::json::integer(r.value->den())}};
        if (r.witness) j["strategy"] = cgs::json::strategy(*r.witness, name, c.states);
        if (r.outcome) j["outcome"] = cgs::json::collection(*r.outcome, name);
        std::cout << j.dump(2) << "\n";
      } else {
        if (r.value) std::cout << "best good weight within depth " << depth << ": " << r.value->str() << "\n";
        if (!r.witness) {
          std::cout << "no strategy found within depth " << depth << " (stabilized: " << (r.stabilized ? "yes" : "no") << ")\n";
        } else {
          std::cout << "strategy found\n";
          for (const auto& [history, choice] : r.witness->choice) std::cout << "  " << name(history) << " -> " << render(choice, name) << "\n";
          if (r.outcome) std::cout << "forces " << render(*r.outcome, name) << "\n";
        }
      }
      return r.witness ? kOk : kFailed;
    }
  } catch (const cgs::ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cgs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
