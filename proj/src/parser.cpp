#include "chronolog/parser.hpp"

#include <cctype>

namespace chronolog {

namespace {

constexpr int kMaxNesting = 256;

bool upper(char c) { return c >= 'A' && c <= 'Z'; }
bool lower(char c) { return c >= 'a' && c <= 'z'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool ident_char(char c) { return upper(c) || lower(c) || digit(c) || c == '_'; }

std::string lowercase(std::string s) {
  for (char &c : s)
    if (upper(c))
      c = static_cast<char>(c - 'A' + 'a');
  return s;
}

bool variable_name(const std::string &s) {
  if (s.empty() || !lower(s[0]))
    return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!digit(s[i]))
      return false;
  return true;
}

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  Ontology ontology() {
    Ontology o;
    skip_ws();
    while (!eof()) {
      o.rules.push_back(rule());
      skip_ws();
    }
    return o;
  }

  std::vector<Fact> data() {
    std::vector<Fact> facts;
    skip_ws();
    while (!eof()) {
      Atom a = atom(TermContext::Data);
      skip_ws();
      expect('@');
      skip_ws();
      SourcePosition at = here();
      Interval i = interval();
      if (i.empty())
        throw ParseError(at, "empty interval");
      skip_ws();
      expect('.');
      facts.push_back({std::move(a), std::move(i)});
      skip_ws();
    }
    return facts;
  }

  Query query(const Signature *sig) {
    skip_ws();
    SourcePosition at = here();
    Query q;
    q.atom = atom(TermContext::Rule);
    if (sig) {
      auto it = sig->find(q.atom.predicate);
      if (it != sig->end() && it->second != q.atom.arity())
        throw ParseError(at, q.atom.predicate + " has arity " + std::to_string(it->second) +
                                 ", query uses " + std::to_string(q.atom.arity()));
    }
    skip_ws();
    expect('@');
    skip_ws();
    if (eof() || !lower(peek()))
      error("expected an interval variable");
    q.interval_variable = identifier();
    skip_ws();
    if (!eof() && peek() == '.') {
      advance();
      skip_ws();
    }
    if (!eof())
      error("unexpected text after query");
    return q;
  }

private:
  // -- cursor -------------------------------------------------------------

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  SourcePosition here() const { return {line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void error(const std::string &msg) const { throw ParseError(here(), msg); }

  std::string describe_next() const {
    if (eof())
      return "end of input";
    unsigned char c = static_cast<unsigned char>(peek());
    if (std::isprint(c))
      return std::string("'") + peek() + "'";
    return "byte " + std::to_string(c);
  }

  void expect(char c) {
    if (eof() || peek() != c)
      error(std::string("expected '") + c + "', found " + describe_next());
    advance();
  }

  bool at_word(std::string_view word) const {
    if (src_.substr(pos_, word.size()) != word)
      return false;
    return !ident_char(peek(word.size()));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (!eof() && ident_char(peek()))
      advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  // Raw text up to one of the stop characters, not crossing a line break.
  std::string_view raw_until(std::string_view stops) {
    std::size_t start = pos_;
    while (!eof() && stops.find(peek()) == std::string_view::npos && peek() != '\n')
      advance();
    return src_.substr(start, pos_ - start);
  }

  // Rethrows a ParseError from a single-token sub-parser at an absolute
  // position.
  template <class F> auto token(SourcePosition at, F &&f) {
    try {
      return f();
    } catch (const ParseError &e) {
      throw ParseError({at.line, at.column + e.position().column - 1}, e.message());
    }
  }

  // -- grammar ------------------------------------------------------------

  Rule rule() {
    Rule r;
    if (at_word("bottom")) {
      for (int i = 0; i < 6; ++i)
        advance();
    } else {
      r.head = literal(0);
    }
    skip_ws();
    if (!(peek() == '<' && peek(1) == '-'))
      error("expected '<-', found " + describe_next());
    advance();
    advance();
    do {
      skip_ws();
      r.body.push_back(literal(0));
      skip_ws();
    } while (!eof() && peek() == ',' && (advance(), true));
    expect('.');
    return r;
  }

  Literal literal(int depth) {
    if (depth > kMaxNesting)
      error("literal nested too deeply");
    skip_ws();
    if (eof())
      error("expected a literal, found end of input");
    char c = peek();
    if (c == '(') {
      advance();
      Literal inner = literal(depth + 1);
      skip_ws();
      expect(')');
      return inner;
    }
    static constexpr std::pair<std::string_view, ModalKind> kOps[] = {
        {"boxplus", ModalKind::BoxFuture},
        {"boxminus", ModalKind::BoxPast},
        {"diamondplus", ModalKind::DiamondFuture},
        {"diamondminus", ModalKind::DiamondPast},
    };
    for (const auto &[word, kind] : kOps) {
      if (at_word(word)) {
        for (std::size_t i = 0; i < word.size(); ++i)
          advance();
        MetricOperator op{kind, window()};
        return Literal::modal(op, literal(depth + 1));
      }
    }
    if (upper(c) || c == '_')
      return Literal::atom(atom(TermContext::Rule));
    if (ident_char(c) || c == '"')
      return Literal::comparison(comparison());
    error("expected a literal, found " + describe_next());
  }

  Window window() {
    skip_ws();
    SourcePosition at = here();
    Window w;
    if (peek() == '[')
      w.lower = LowerCmp::Geq;
    else if (peek() == '(')
      w.lower = LowerCmp::Gt;
    else
      error("expected '[' or '(' to open an operator window, found " + describe_next());
    advance();
    SourcePosition e_at = here();
    std::string_view e_text = raw_until(",])");
    w.e = token(e_at, [&] { return parse_duration(e_text); });
    expect(',');
    SourcePosition d_at = here();
    std::string_view d_text = raw_until(",])");
    w.d = token(d_at, [&] { return parse_duration(d_text); });
    if (peek() == ']')
      w.upper = UpperCmp::Leq;
    else if (peek() == ')')
      w.upper = UpperCmp::Lt;
    else
      error("expected ']' or ')' to close an operator window, found " + describe_next());
    advance();
    if (!w.consistent())
      throw ParseError(at, "empty window: no distance satisfies it");
    return w;
  }

  Interval interval() {
    BoundPair b;
    if (peek() == '[')
      b.lo = Bound::Closed;
    else if (peek() == '(')
      b.lo = Bound::Open;
    else
      error("expected '[' or '(' to open an interval, found " + describe_next());
    advance();
    SourcePosition lo_at = here();
    std::string_view lo_text = raw_until(",])");
    TimePoint lo = token(lo_at, [&] { return parse_timepoint(lo_text); });
    expect(',');
    SourcePosition hi_at = here();
    std::string_view hi_text = raw_until(",])");
    TimePoint hi = token(hi_at, [&] { return parse_timepoint(hi_text); });
    if (peek() == ']')
      b.hi = Bound::Closed;
    else if (peek() == ')')
      b.hi = Bound::Open;
    else
      error("expected ']' or ')' to close an interval, found " + describe_next());
    advance();
    return {lo, b.lo, hi, b.hi};
  }

  struct BoundPair {
    Bound lo = Bound::Closed;
    Bound hi = Bound::Closed;
  };

  Atom atom(TermContext ctx) {
    if (eof() || !(upper(peek()) || peek() == '_'))
      error("expected a predicate name, found " + describe_next());
    Atom a;
    a.predicate = identifier();
    skip_ws();
    if (peek() != '(')
      return a;
    advance();
    skip_ws();
    if (peek() == ')') {
      advance();
      return a;
    }
    while (true) {
      skip_ws();
      a.args.push_back(term(ctx));
      skip_ws();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(')');
      return a;
    }
  }

  Term term(TermContext ctx) {
    if (peek() == '"') {
      advance();
      std::string s;
      while (true) {
        if (eof() || peek() == '\n')
          error("unterminated quoted constant");
        char c = peek();
        advance();
        if (c == '"')
          break;
        if (c == '\\') {
          if (eof() || (peek() != '"' && peek() != '\\'))
            error("bad escape in quoted constant");
          c = peek();
          advance();
        }
        s += c;
      }
      if (s.empty())
        error("empty quoted constant");
      return Term::constant(lowercase(std::move(s)));
    }
    if (eof() || !ident_char(peek()))
      error("expected a term, found " + describe_next());
    std::string name = identifier();
    if (ctx == TermContext::Rule && variable_name(name))
      return Term::variable(std::move(name));
    return Term::constant(lowercase(std::move(name)));
  }

  Comparison comparison() {
    Comparison c;
    c.lhs = term(TermContext::Rule);
    skip_ws();
    if (peek() == '=') {
      advance();
      c.op = ComparisonOp::Eq;
    } else if (peek() == '!' && peek(1) == '=') {
      advance();
      advance();
      c.op = ComparisonOp::Neq;
    } else {
      error("expected '=' or '!=', found " + describe_next());
    }
    skip_ws();
    c.rhs = term(TermContext::Rule);
    return c;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

} // namespace

Ontology parse_ontology(std::string_view text) { return Parser(text).ontology(); }

std::vector<Fact> parse_data(std::string_view text) { return Parser(text).data(); }

Query parse_query(std::string_view text, const Signature *signature) {
  return Parser(text).query(signature);
}

} // namespace chronolog
