// Copyright 2026 The prefarg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prefarg/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prefarg::dsl {
namespace {

enum class Tok {
  Ident, String, LParen, RParen, LBrace, RBrace, Comma, Dot, Colon, Arrow, Implies,
  Gt, Tilde, Slash, Equals, Minus, Eof
};

std::string_view tokName(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'<-'";
    case Tok::Implies: return "'=>'";
    case Tok::Gt: return "'>'";
    case Tok::Tilde: return "'~'";
    case Tok::Slash: return "'/'";
    case Tok::Equals: return "'='";
    case Tok::Minus: return "'-'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceSpan span;
};

struct ParseFailure {
  Diagnostic diagnostic;
};

bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipTrivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    Token eof;
    eof.kind = Tok::Eof;
    eof.span = SourceSpan{file_, line_, col_, line_, col_};
    out.push_back(eof);
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token t;
    t.span.file = file_;
    t.span.startLine = line_;
    t.span.startCol = col_;
    char c = text_[pos_];
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      advance();
    };
    if (identChar(c)) {
      t.kind = Tok::Ident;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (identChar(d)) {
          t.text += d;
          advance();
        } else if (d == '.' && pos_ + 1 < text_.size() && identChar(text_[pos_ + 1])) {
          t.text += d;
          advance();
        } else {
          break;
        }
      }
    } else if (c == '"') {
      t.kind = Tok::String;
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
        t.text += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '"') {
        t.span.endLine = t.span.startLine;
        t.span.endCol = t.span.startCol;
        throw ParseFailure{{"unterminated string", "", t.span, "'\"'"}};
      }
      advance();
    } else if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      t.kind = Tok::Arrow;
      t.text = "<-";
      advance();
      advance();
    } else if (c == '=' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      t.kind = Tok::Implies;
      t.text = "=>";
      advance();
      advance();
    } else {
      switch (c) {
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        case '{': single(Tok::LBrace); break;
        case '}': single(Tok::RBrace); break;
        case ',': single(Tok::Comma); break;
        case '.': single(Tok::Dot); break;
        case ':': single(Tok::Colon); break;
        case '>': single(Tok::Gt); break;
        case '~': single(Tok::Tilde); break;
        case '/': single(Tok::Slash); break;
        case '=': single(Tok::Equals); break;
        case '-': single(Tok::Minus); break;
        default: {
          t.span.endLine = line_;
          t.span.endCol = col_;
          std::string shown(1, c);
          if (static_cast<unsigned char>(c) >= 0x80) shown = "non-ASCII byte";
          throw ParseFailure{{"unexpected character " + shown, "", t.span, "a statement"}};
        }
      }
      t.span.endLine = t.span.startLine;
      t.span.endCol = t.span.startCol;
      return t;
    }
    // multi-character tokens end on the last consumed column
    t.span.endLine = line_;
    t.span.endCol = col_ - 1;
    return t;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool isVariableName(std::string_view s) {
  return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, bool scenario)
      : toks_(std::move(tokens)), scenario_(scenario) {}

  Theory theory;
  std::map<std::string, SourceSpan> labelSpans;
  ScenarioParse* scenarioOut = nullptr;

  void parseAll() {
    while (peek().kind != Tok::Eof) statement();
  }

  Literal literalOnly() {
    Literal l = literal();
    expect(Tok::Eof, "end of input");
    return l;
  }

  PriorityRule priorityOnly() {
    PriorityRule p = priorityBody();
    if (peek().kind == Tok::Dot) take();
    expect(Tok::Eof, "end of input");
    return p;
  }

  // Labels already declared, with their level (0 = argument rule).
  std::map<std::string, int> levels;

 private:
  const Token& peek() const { return toks_[pos_]; }

  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message, const Token& at, std::string hint) {
    SourceSpan span = at.span;
    // Errors at end of input point at the dangling token before it.
    if (at.kind == Tok::Eof && pos_ > 0) span = toks_[pos_ - 1].span;
    if (at.kind == Tok::Eof && pos_ == 0) span = SourceSpan{at.span.file, 1, 1, 1, 1};
    throw ParseFailure{{message, "", span, std::move(hint)}};
  }

  const Token& expect(Tok kind, std::string_view hint) {
    if (peek().kind != kind) {
      std::string found = peek().kind == Tok::Ident || peek().kind == Tok::String
                              ? "'" + peek().text + "'"
                              : std::string(tokName(peek().kind));
      fail("unexpected " + found, peek(), std::string(hint));
    }
    return take();
  }

  std::string identifier(std::string_view what) {
    const Token& t = expect(Tok::Ident, what);
    return t.text;
  }

  std::string lowerIdentifier(std::string_view what) {
    const Token& t = expect(Tok::Ident, what);
    if (isVariableName(t.text)) {
      --pos_;
      fail(std::string(what) + " must start with a lowercase letter or digit: " + t.text, t,
           std::string(what));
    }
    return t.text;
  }

  Term term() {
    const Token& t = expect(Tok::Ident, "a constant or variable");
    return isVariableName(t.text) ? Term::variable(t.text) : Term::constant(t.text);
  }

  Literal literal() {
    Literal l;
    if (peek().kind == Tok::Ident && peek().text == "neg") {
      // `neg` followed by another identifier is the negation keyword.
      if (toks_[pos_ + 1].kind == Tok::Ident) {
        take();
        l.negated = true;
      }
    }
    l.predicate = lowerIdentifier("a predicate name");
    if (peek().kind == Tok::LParen) {
      take();
      l.args.push_back(term());
      while (peek().kind == Tok::Comma) {
        take();
        l.args.push_back(term());
      }
      expect(Tok::RParen, "')' or ','");
    }
    return l;
  }

  std::vector<Literal> literalList() {
    std::vector<Literal> out;
    out.push_back(literal());
    while (peek().kind == Tok::Comma) {
      take();
      out.push_back(literal());
    }
    return out;
  }

  void declareLabel(const Token& t, int level) {
    if (levels.count(t.text)) {
      --pos_;
      fail("duplicate label " + t.text, t, "a fresh label");
    }
    levels[t.text] = level;
    labelSpans[t.text] = t.span;
  }

  void statement() {
    const Token& kw = expect(Tok::Ident, "a statement keyword");
    const std::string& k = kw.text;
    if (k == "fact") {
      Literal l = literal();
      if (!l.isGround()) fail("facts must be ground: " + l.toString(), toks_[pos_ - 1], "constants");
      expect(Tok::Dot, "'.'");
      theory.facts.insert(std::move(l));
    } else if (k == "rule") {
      ruleStatement();
    } else if (k == "prefer") {
      PriorityRule p = priorityBody();
      expect(Tok::Dot, "'.'");
      theory.priorities.push_back(std::move(p));
    } else if (k == "conflict") {
      IncompatibilityDecl d;
      d.left = literal();
      expect(Tok::Tilde, "'~'");
      d.right = literal();
      expect(Tok::Dot, "'.'");
      theory.incompatibilities.push_back(std::move(d));
    } else if (k == "abducible") {
      AbducibleDecl a;
      a.predicate = lowerIdentifier("a predicate name");
      expect(Tok::Slash, "'/'");
      const Token& n = expect(Tok::Ident, "an arity");
      if (!std::all_of(n.text.begin(), n.text.end(), ::isdigit)) fail("arity must be a number", n, "a number");
      a.arity = static_cast<std::size_t>(std::stoul(n.text));
      if (peek().kind == Tok::Ident && peek().text == "neg") {
        take();
        a.negated = true;
      }
      expect(Tok::Dot, "'.'");
      theory.abducibles.insert(a);
    } else if (k == "sort") {
      std::string name = lowerIdentifier("a sort name");
      expect(Tok::Equals, "'='");
      expect(Tok::LBrace, "'{'");
      auto& members = theory.sorts[name];
      if (peek().kind != Tok::RBrace) {
        members.insert(lowerIdentifier("a constant"));
        while (peek().kind == Tok::Comma) {
          take();
          members.insert(lowerIdentifier("a constant"));
        }
      }
      expect(Tok::RBrace, "'}' or ','");
      expect(Tok::Dot, "'.'");
    } else if (k == "layer") {
      const Token& labelTok = expect(Tok::Ident, "a rule label");
      auto it = levels.find(labelTok.text);
      if (it == levels.end() || it->second != 0) {
        --pos_;
        fail("layer refers to unknown rule " + labelTok.text, labelTok, "a previously declared rule label");
      }
      expect(Tok::Colon, "':'");
      const Token& layerTok = expect(Tok::Ident, "tactical, operational or strategic");
      auto layer = parseLayer(layerTok.text);
      if (!layer) {
        --pos_;
        fail("unknown layer " + layerTok.text, layerTok, "tactical, operational or strategic");
      }
      for (auto& r : theory.rules)
        if (r.label == labelTok.text) r.layer = *layer;
      expect(Tok::Dot, "'.'");
    } else if (scenario_ && k == "pack") {
      const Token& s = expect(Tok::String, "a quoted pack name or path");
      scenarioOut->packs.push_back(s.text);
      expect(Tok::Dot, "'.'");
    } else if (scenario_ && k == "stage") {
      StageStatement st;
      st.span = kw.span;
      st.stage = stageNumber();
      expect(Tok::Colon, "':'");
      st.literals = literalList();
      for (const auto& l : st.literals)
        if (!l.isGround()) fail("stage evidence must be ground: " + l.toString(), toks_[pos_ - 1], "constants");
      expect(Tok::Dot, "'.'");
      scenarioOut->stages.push_back(std::move(st));
    } else if (scenario_ && k == "expect") {
      ExpectStatement e;
      e.span = kw.span;
      e.stage = stageNumber();
      expect(Tok::Colon, "':'");
      e.goal = literal();
      if (!e.goal.isGround()) fail("expected goals must be ground", toks_[pos_ - 1], "constants");
      expect(Tok::Implies, "'=>'");
      e.status = identifier("a status");
      while (peek().kind == Tok::Minus) {
        take();
        e.status += "-" + identifier("a status");
      }
      expect(Tok::Dot, "'.'");
      scenarioOut->expectations.push_back(std::move(e));
    } else {
      --pos_;
      fail("unknown statement '" + k + "'", kw,
           scenario_ ? "fact, rule, prefer, conflict, abducible, sort, layer, pack, stage or expect"
                     : "fact, rule, prefer, conflict, abducible, sort or layer");
    }
  }

  int stageNumber() {
    const Token& n = expect(Tok::Ident, "a stage number");
    if (n.text.empty() || !std::all_of(n.text.begin(), n.text.end(), ::isdigit) || n.text.size() > 6)
      fail("stage must be a positive number", n, "a number");
    int v = std::stoi(n.text);
    if (v < 1) fail("stage must be a positive number", n, "a number");
    return v;
  }

  void ruleStatement() {
    const Token& labelTok = expect(Tok::Ident, "a rule label");
    if (isVariableName(labelTok.text)) {
      --pos_;
      fail("labels must start with a lowercase letter: " + labelTok.text, labelTok, "a label");
    }
    expect(Tok::Colon, "':'");
    ArgumentRule r;
    r.label = labelTok.text;
    r.head = literal();
    if (peek().kind == Tok::Arrow) {
      const Token& arrow = take();
      if (peek().kind == Tok::Dot || peek().kind == Tok::Eof) {
        throw ParseFailure{{"rule body missing after '<-'", r.label, arrow.span, "a body literal"}};
      }
      r.body = literalList();
    }
    expect(Tok::Dot, "'.' or '<-'");
    declareLabel(labelTok, 0);
    theory.rules.push_back(std::move(r));
  }

  PriorityRule priorityBody() {
    const Token& labelTok = expect(Tok::Ident, "a priority label");
    if (isVariableName(labelTok.text)) {
      --pos_;
      fail("labels must start with a lowercase letter: " + labelTok.text, labelTok, "a label");
    }
    expect(Tok::Colon, "':'");
    PriorityRule p;
    p.label = labelTok.text;
    const Token& hi = expect(Tok::Ident, "the preferred label");
    expect(Tok::Gt, "'>'");
    const Token& lo = expect(Tok::Ident, "the less preferred label");
    p.higher = hi.text;
    p.lower = lo.text;
    if (peek().kind == Tok::Ident && peek().text == "when") {
      take();
      p.body = literalList();
    }
    auto levelOf = [&](const Token& t) {
      auto it = levels.find(t.text);
      if (it == levels.end()) {
        throw ParseFailure{{"unknown label " + t.text + " (labels must be declared before use)",
                            p.label, t.span, "a previously declared label"}};
      }
      return it->second;
    };
    int lh = levelOf(hi);
    int ll = levelOf(lo);
    if (lh != ll) {
      throw ParseFailure{{"priority " + p.label + " relates labels of different levels", p.label,
                          lo.span, "labels of the same level"}};
    }
    if (p.higher == p.lower) {
      throw ParseFailure{{"irreflexivity violated in " + p.label, p.label, lo.span, "two distinct labels"}};
    }
    p.level = lh + 1;
    declareLabel(labelTok, p.level);
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool scenario_ = false;
};

}  // namespace

ParseResult parse(std::string_view text, std::string file) {
  ParseResult out;
  try {
    Parser p(Lexer(text, file).run(), false);
    p.parseAll();
    p.theory.refreshDomain();
    out.theory = std::move(p.theory);
    out.labelSpans = std::move(p.labelSpans);
  } catch (const ParseFailure& f) {
    out.diagnostics.push_back(f.diagnostic);
  }
  return out;
}

ScenarioParse parseScenario(std::string_view text, std::string file) {
  ScenarioParse out;
  try {
    Parser p(Lexer(text, file).run(), true);
    p.scenarioOut = &out;
    p.parseAll();
    p.theory.refreshDomain();
    out.extras = std::move(p.theory);
  } catch (const ParseFailure& f) {
    out.diagnostics.push_back(f.diagnostic);
  }
  return out;
}

std::optional<Literal> parseLiteral(std::string_view text, Diagnostic* error) {
  try {
    Parser p(Lexer(text, "").run(), false);
    return p.literalOnly();
  } catch (const ParseFailure& f) {
    if (error) *error = f.diagnostic;
  }
  return std::nullopt;
}

std::optional<PriorityRule> parsePriority(std::string_view text, Diagnostic* error) {
  // Level inference needs the referenced labels; the caller fixes the level.
  try {
    auto toks = Lexer(text, "").run();
    Parser p(toks, false);
    for (const auto& t : toks)
      if (t.kind == Tok::Ident) p.levels.emplace(t.text, 0);
    // The label itself must not be pre-registered.
    if (!toks.empty() && toks[0].kind == Tok::Ident) p.levels.erase(toks[0].text);
    return p.priorityOnly();
  } catch (const ParseFailure& f) {
    if (error) *error = f.diagnostic;
  }
  return std::nullopt;
}

std::string print(const Theory& theory) {
  std::ostringstream os;
  for (const auto& [name, members] : theory.sorts) {
    os << "sort " << name << " = {";
    bool first = true;
    for (const auto& m : members) {
      os << (first ? "" : ", ") << m;
      first = false;
    }
    os << "}.\n";
  }
  for (const auto& a : theory.abducibles)
    os << "abducible " << a.predicate << '/' << a.arity << (a.negated ? " neg" : "") << ".\n";
  std::vector<std::string> conflicts;
  for (const auto& d : theory.incompatibilities)
    conflicts.push_back("conflict " + d.left.toString() + " ~ " + d.right.toString() + ".");
  std::sort(conflicts.begin(), conflicts.end());
  for (const auto& c : conflicts) os << c << '\n';
  for (const auto& f : theory.facts) os << "fact " << f.toString() << ".\n";

  std::vector<const ArgumentRule*> rules;
  for (const auto& r : theory.rules) rules.push_back(&r);
  std::sort(rules.begin(), rules.end(), [](auto* a, auto* b) { return a->label < b->label; });
  for (const auto* r : rules) {
    os << "rule " << r->label << ": " << r->head.toString();
    if (!r->body.empty()) os << " <- " << joinLiterals(r->body);
    os << ".\n";
  }
  for (const auto* r : rules)
    if (r->layer != Layer::None) os << "layer " << r->label << ": " << layerName(r->layer) << ".\n";

  std::vector<const PriorityRule*> prios;
  for (const auto& p : theory.priorities) prios.push_back(&p);
  std::sort(prios.begin(), prios.end(), [](auto* a, auto* b) {
    return std::tie(a->level, a->label) < std::tie(b->level, b->label);
  });
  for (const auto* p : prios) {
    os << "prefer " << p->label << ": " << p->higher << " > " << p->lower;
    if (!p->body.empty()) os << " when " << joinLiterals(p->body);
    os << ".\n";
  }
  return os.str();
}

std::string renderDiagnostic(const Diagnostic& d, std::string_view text) {
  std::ostringstream os;
  os << "error: " << d.toString() << '\n';
  if (!d.span) return os.str();
  int line = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size() && line < d.span->startLine; ++i) {
    if (text[i] == '\n') {
      ++line;
      start = i + 1;
    }
  }
  std::size_t end = text.find('\n', start);
  std::string_view src = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
  if (!src.empty() && src.back() == '\r') src.remove_suffix(1);
  std::string gutter = std::to_string(d.span->startLine);
  os << ' ' << gutter << " | " << src << '\n';
  os << ' ' << std::string(gutter.size(), ' ') << " | ";
  int width = d.span->endLine == d.span->startLine ? std::max(1, d.span->endCol - d.span->startCol + 1) : 1;
  os << std::string(static_cast<std::size_t>(std::max(0, d.span->startCol - 1)), ' ')
     << std::string(static_cast<std::size_t>(width), '^') << '\n';
  return os.str();
}

}  // namespace prefarg::dsl
