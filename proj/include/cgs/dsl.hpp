#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgs/error.hpp"
#include "cgs/game.hpp"
#include "cgs/play.hpp"
#include "cgs/rational.hpp"

// Game description language:
//
//   game NAME {
//     mode: nondet | prob
//     alphabet A = { a, b }
//     alphabet B = { tick }
//     controller x { -> e; -> f; }
//     env e { [p/q :] a -> x; [p/q :] tick }
//     coalg z { choice { a -> x; tick } choice { b -> z } }
//   }
//
// `a -> x` is the continuing move Go(a, x), a bare terminating observation is
// Stop(b). `coalg` declares a controller state by its generators directly.
// Comments run from '#' to the end of the line.

namespace cgs::dsl {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct OutcomeAst {
  Location at;
  std::optional<Rational> weight;
  std::string obs;
  std::optional<std::string> target;
};

struct ControllerAst {
  Location at;
  std::string name;
  std::vector<std::pair<Location, std::string>> edges;
};

struct EnvAst {
  Location at;
  std::string name;
  std::vector<OutcomeAst> outcomes;
};

struct CoalgAst {
  Location at;
  std::string name;
  std::vector<std::vector<OutcomeAst>> choices;
};

struct GameFileAst {
  std::string name;
  Mode mode = Mode::nondet;
  Location mode_at;
  std::vector<std::string> continuing;
  std::vector<std::string> terminating;
  std::vector<ControllerAst> controllers;
  std::vector<EnvAst> environments;
  std::vector<CoalgAst> coalgebras;
};

namespace detail {

enum class Tok { ident, number, lbrace, rbrace, semi, colon, comma, equals, arrow, slash, end };

inline std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::semi: return "';'";
    case Tok::colon: return "':'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::arrow: return "'->'";
    case Tok::slash: return "'/'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  Location at;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Location at = loc_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::end, "", at});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
          advance();
        out.push_back({Tok::ident, std::string(src_.substr(start, pos_ - start)), at});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back({Tok::number, std::string(src_.substr(start, pos_ - start)), at});
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::arrow, "->", at});
      } else {
        Tok kind;
        switch (c) {
          case '{': kind = Tok::lbrace; break;
          case '}': kind = Tok::rbrace; break;
          case ';': kind = Tok::semi; break;
          case ':': kind = Tok::colon; break;
          case ',': kind = Tok::comma; break;
          case '=': kind = Tok::equals; break;
          case '/': kind = Tok::slash; break;
          default: {
            std::size_t len = 1;
            const auto lead = static_cast<unsigned char>(c);
            if (lead >= 0xF0) len = 4;
            else if (lead >= 0xE0) len = 3;
            else if (lead >= 0xC0) len = 2;
            throw ParseError(at.line, at.column, "unexpected character '" + std::string(src_.substr(pos_, len)) + "'");
          }
        }
        advance();
        out.push_back({kind, std::string(1, c), at});
      }
    }
  }

 private:
  void advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++loc_.column;  // columns count code points, not bytes
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Location loc_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  GameFileAst game() {
    GameFileAst g;
    keyword("game");
    g.name = expect(Tok::ident).text;
    expect(Tok::lbrace);
    keyword("mode");
    expect(Tok::colon);
    const auto& m = expect(Tok::ident);
    g.mode_at = m.at;
    if (m.text == "nondet") g.mode = Mode::nondet;
    else if (m.text == "prob") g.mode = Mode::prob;
    else fail(m.at, "unknown mode '" + m.text + "', expected nondet or prob");
    alphabet("A", g.continuing);
    alphabet("B", g.terminating);
    while (peek().kind != Tok::rbrace) {
      const auto& kw = expect(Tok::ident);
      if (kw.text == "controller") {
        g.controllers.push_back(controller(kw.at));
      } else if (kw.text == "env") {
        g.environments.push_back(env(kw.at));
      } else if (kw.text == "coalg") {
        g.coalgebras.push_back(coalg(kw.at));
      } else {
        fail(kw.at, "expected 'controller', 'env' or 'coalg', found '" + kw.text + "'");
      }
    }
    expect(Tok::rbrace);
    expect(Tok::end);
    return g;
  }

 private:
  [[noreturn]] static void fail(Location at, const std::string& msg) { throw ParseError(at.line, at.column, msg); }

  const Token& peek() const { return toks_[pos_]; }

  const Token& expect(Tok kind) {
    const auto& t = toks_[pos_];
    if (t.kind != kind) {
      std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
      fail(t.at, "expected " + std::string(tok_name(kind)) + ", found " + found);
    }
    if (t.kind != Tok::end) ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  void keyword(std::string_view kw) {
    const auto& t = peek();
    if (t.kind != Tok::ident || t.text != kw) {
      std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
      fail(t.at, "expected '" + std::string(kw) + "', found " + found);
    }
    ++pos_;
  }

  void alphabet(std::string_view which, std::vector<std::string>& out) {
    keyword("alphabet");
    keyword(which);
    expect(Tok::equals);
    expect(Tok::lbrace);
    if (peek().kind != Tok::rbrace) {
      do {
        const auto& t = expect(Tok::ident);
        for (const auto& s : out)
          if (s == t.text) fail(t.at, "observation '" + t.text + "' listed twice in alphabet " + std::string(which));
        out.push_back(t.text);
      } while (accept(Tok::comma));
    }
    expect(Tok::rbrace);
  }

  ControllerAst controller(Location at) {
    ControllerAst c{at, expect(Tok::ident).text, {}};
    expect(Tok::lbrace);
    while (peek().kind == Tok::arrow) {
      ++pos_;
      const auto& t = expect(Tok::ident);
      c.edges.emplace_back(t.at, t.text);
      if (peek().kind != Tok::rbrace) expect(Tok::semi);
    }
    expect(Tok::rbrace);
    return c;
  }

  OutcomeAst outcome() {
    OutcomeAst o;
    o.at = peek().at;
    if (peek().kind == Tok::number) {
      const auto& num = expect(Tok::number);
      std::string lit = num.text;
      if (accept(Tok::slash)) lit += "/" + expect(Tok::number).text;
      try {
        o.weight = Rational::parse(lit);
      } catch (const std::exception& e) {
        fail(num.at, "invalid weight '" + lit + "': " + e.what());
      }
      expect(Tok::colon);
    }
    o.obs = expect(Tok::ident).text;
    if (accept(Tok::arrow)) o.target = expect(Tok::ident).text;
    return o;
  }

  std::vector<OutcomeAst> outcomes() {
    std::vector<OutcomeAst> out;
    expect(Tok::lbrace);
    while (peek().kind != Tok::rbrace) {
      out.push_back(outcome());
      if (peek().kind != Tok::rbrace) expect(Tok::semi);
    }
    expect(Tok::rbrace);
    return out;
  }

  EnvAst env(Location at) {
    EnvAst e{at, expect(Tok::ident).text, {}};
    e.outcomes = outcomes();
    return e;
  }

  CoalgAst coalg(Location at) {
    CoalgAst c{at, expect(Tok::ident).text, {}};
    expect(Tok::lbrace);
    while (peek().kind != Tok::rbrace) {
      keyword("choice");
      c.choices.push_back(outcomes());
    }
    expect(Tok::rbrace);
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one game file. Throws ParseError with the location of the first problem.
inline GameFileAst parse_game(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).game();
}

/// Resolves names. Reference errors (undeclared states, unknown observations,
/// misplaced weights, repeated declarations) are ParseErrors with a location;
/// structural problems are left to validate().
inline BipartiteGame build_game(const GameFileAst& ast) {
  auto fail = [](Location at, const std::string& msg) { throw ParseError(at.line, at.column, msg); };
  BipartiteGame g;
  g.name = ast.name;
  g.mode = ast.mode;
  g.alphabets = Alphabets(ast.continuing, ast.terminating);

  std::map<std::string, StateId> ctrl;
  std::map<std::string, std::size_t> envs;
  auto declare = [&](Location at, const std::string& name) {
    if (ctrl.contains(name) || envs.contains(name)) fail(at, "state '" + name + "' declared twice");
  };
  for (const auto& c : ast.controllers) {
    declare(c.at, c.name);
    ctrl[c.name] = static_cast<StateId>(g.controllers.size());
    g.controllers.push_back({c.name, {}, {}});
  }
  for (const auto& c : ast.coalgebras) {
    declare(c.at, c.name);
    ctrl[c.name] = static_cast<StateId>(g.controllers.size());
    g.controllers.push_back({c.name, {}, {}});
  }
  for (const auto& e : ast.environments) {
    declare(e.at, e.name);
    envs[e.name] = g.environments.size();
    g.environments.push_back({e.name, {}});
  }

  auto resolve = [&](const OutcomeAst& o) {
    if (ast.mode == Mode::nondet && o.weight) fail(o.at, "weights are only allowed in prob mode");
    if (ast.mode == Mode::prob && !o.weight) fail(o.at, "prob mode needs a weight on every outcome");
    Outcome out;
    if (o.weight) out.weight = *o.weight;
    if (o.target) {
      auto a = g.alphabets.find_continuing(o.obs);
      if (!a) {
        if (g.alphabets.find_terminating(o.obs)) fail(o.at, "terminating observation '" + o.obs + "' cannot lead to a state");
        fail(o.at, "unknown observation '" + o.obs + "'");
      }
      auto it = ctrl.find(*o.target);
      if (it == ctrl.end()) fail(o.at, "undeclared controller state '" + *o.target + "'");
      out.step = HStep::go(*a, it->second);
    } else {
      auto b = g.alphabets.find_terminating(o.obs);
      if (!b) {
        if (g.alphabets.find_continuing(o.obs)) fail(o.at, "continuing observation '" + o.obs + "' needs a successor state");
        fail(o.at, "unknown observation '" + o.obs + "'");
      }
      out.step = HStep::stop(*b);
    }
    return out;
  };

  for (const auto& c : ast.controllers) {
    auto& x = g.controllers[ctrl.at(c.name)];
    for (const auto& [at, name] : c.edges) {
      auto it = envs.find(name);
      if (it == envs.end()) fail(at, "undeclared environment state '" + name + "'");
      x.edges.push_back(it->second);
    }
  }
  for (const auto& c : ast.coalgebras) {
    auto& x = g.controllers[ctrl.at(c.name)];
    for (const auto& choice : c.choices) {
      OutcomeRow row;
      for (const auto& o : choice) row.push_back(resolve(o));
      x.direct.push_back(std::move(row));
    }
  }
  for (const auto& e : ast.environments)
    for (const auto& o : e.outcomes) g.environments[envs.at(e.name)].outcomes.push_back(resolve(o));
  return g;
}

inline BipartiteGame load_game(std::string_view text) { return build_game(parse_game(text)); }

inline BipartiteGame load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_game(ss.str());
}

/// Parses "a1.a2#b" (or "#b") against the alphabets.
inline Trace parse_trace(const Alphabets& ab, std::string_view text) {
  const auto hash = text.find('#');
  if (hash == std::string_view::npos) throw Error("trace '" + std::string(text) + "' has no '#end' part");
  Trace t;
  auto body = text.substr(0, hash);
  const auto end = text.substr(hash + 1);
  while (!body.empty()) {
    const auto dot = body.find('.');
    const auto name = body.substr(0, dot);
    auto a = ab.find_continuing(name);
    if (!a) throw Error("trace '" + std::string(text) + "': unknown continuing observation '" + std::string(name) + "'");
    t.body.push_back(*a);
    if (dot == std::string_view::npos) break;
    body.remove_prefix(dot + 1);
  }
  auto b = ab.find_terminating(end);
  if (!b) throw Error("trace '" + std::string(text) + "': unknown terminating observation '" + std::string(end) + "'");
  t.end = *b;
  return t;
}

}  // namespace cgs::dsl
