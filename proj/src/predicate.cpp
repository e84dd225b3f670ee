#include <cctype>
#include <charconv>

#include "gogc/error.hpp"
#include "gogc/transform.hpp"

namespace gogc {

namespace {

enum class Tok { Ident, Field, Number, String, LParen, RParen, Cmp, And, Or, Not, True, False, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  Predicate::Op op = Predicate::Op::Eq;
  std::size_t pos = 0;
};

[[noreturn]] void parse_error(std::size_t pos, const std::string& what) {
  fail(ErrorCode::PredicateParseError, "at offset " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (c == '(') {
      t.kind = Tok::LParen;
      ++i;
    } else if (c == ')') {
      t.kind = Tok::RParen;
      ++i;
    } else if (c == '<' || c == '>' || c == '=' || c == '!') {
      bool eq_next = i + 1 < s.size() && s[i + 1] == '=';
      t.kind = Tok::Cmp;
      if (c == '<') t.op = eq_next ? Predicate::Op::Le : Predicate::Op::Lt;
      if (c == '>') t.op = eq_next ? Predicate::Op::Ge : Predicate::Op::Gt;
      if (c == '=') {
        if (!eq_next) parse_error(i, "'=' must be written '=='");
        t.op = Predicate::Op::Eq;
      }
      if (c == '!') {
        if (eq_next) {
          t.op = Predicate::Op::Ne;
        } else {
          t.kind = Tok::Not;
        }
      }
      i += (eq_next ? 2 : 1);
    } else if (c == '&' || c == '|') {
      if (i + 1 >= s.size() || s[i + 1] != c) parse_error(i, std::string("expected '") + c + c + "'");
      t.kind = c == '&' ? Tok::And : Tok::Or;
      i += 2;
    } else if (c == '"' || c == '\'') {
      std::size_t end = s.find(c, i + 1);
      if (end == std::string_view::npos) parse_error(i, "unterminated string");
      t.kind = Tok::String;
      t.text = std::string(s.substr(i + 1, end - i - 1));
      i = end + 1;
    } else if (c == '`') {
      std::size_t end = s.find('`', i + 1);
      if (end == std::string_view::npos) parse_error(i, "unterminated field name");
      t.kind = Tok::Field;
      t.text = std::string(s.substr(i + 1, end - i - 1));
      i = end + 1;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
               (c == '-' && i + 1 < s.size() &&
                (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '.'))) {
      double v = 0.0;
      auto res = std::from_chars(s.data() + i, s.data() + s.size(), v);
      if (res.ec != std::errc()) parse_error(i, "bad number");
      t.kind = Tok::Number;
      t.number = v;
      i = static_cast<std::size_t>(res.ptr - s.data());
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.text = std::string(s.substr(i, j - i));
      if (t.text == "and") {
        t.kind = Tok::And;
      } else if (t.text == "or") {
        t.kind = Tok::Or;
      } else if (t.text == "not") {
        t.kind = Tok::Not;
      } else if (t.text == "true") {
        t.kind = Tok::True;
      } else if (t.text == "false") {
        t.kind = Tok::False;
      } else {
        t.kind = Tok::Field;
      }
      i = j;
    } else {
      parse_error(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

}  // namespace

// Recursive descent: or -> and -> not -> primary.
struct PredicateParser {
  std::vector<Token> toks;
  std::size_t at = 0;
  Predicate& out;

  const Token& peek() const { return toks[at]; }

  std::size_t push(Predicate::Node n) {
    out.nodes_.push_back(std::move(n));
    return out.nodes_.size() - 1;
  }

  std::size_t parse_or() {
    std::size_t lhs = parse_and();
    while (peek().kind == Tok::Or) {
      ++at;
      std::size_t rhs = parse_and();
      Predicate::Node n;
      n.kind = Predicate::Node::Kind::Or;
      n.a = lhs;
      n.b = rhs;
      lhs = push(std::move(n));
    }
    return lhs;
  }

  std::size_t parse_and() {
    std::size_t lhs = parse_not();
    while (peek().kind == Tok::And) {
      ++at;
      std::size_t rhs = parse_not();
      Predicate::Node n;
      n.kind = Predicate::Node::Kind::And;
      n.a = lhs;
      n.b = rhs;
      lhs = push(std::move(n));
    }
    return lhs;
  }

  std::size_t parse_not() {
    if (peek().kind == Tok::Not) {
      ++at;
      std::size_t inner = parse_not();
      Predicate::Node n;
      n.kind = Predicate::Node::Kind::Not;
      n.a = inner;
      return push(std::move(n));
    }
    return parse_primary();
  }

  Predicate::Operand operand() {
    const Token& t = peek();
    Predicate::Operand o;
    switch (t.kind) {
      case Tok::Field:
        o.kind = Predicate::Operand::Kind::Field;
        o.field = t.text;
        if (std::find(out.fields_.begin(), out.fields_.end(), t.text) == out.fields_.end()) {
          out.fields_.push_back(t.text);
        }
        break;
      case Tok::Number:
        o.kind = Predicate::Operand::Kind::Number;
        o.literal = number_value(t.number);
        break;
      case Tok::String:
        o.kind = Predicate::Operand::Kind::Text;
        o.literal = text_value(t.text);
        break;
      case Tok::True:
      case Tok::False:
        o.kind = Predicate::Operand::Kind::Bool;
        o.literal = bool_value(t.kind == Tok::True);
        break;
      default:
        parse_error(t.pos, "expected a field or literal");
    }
    ++at;
    return o;
  }

  std::size_t parse_primary() {
    if (peek().kind == Tok::LParen) {
      ++at;
      std::size_t inner = parse_or();
      if (peek().kind != Tok::RParen) parse_error(peek().pos, "expected ')'");
      ++at;
      return inner;
    }
    Predicate::Node n;
    n.lhs = operand();
    if (peek().kind == Tok::Cmp) {
      n.kind = Predicate::Node::Kind::Compare;
      n.op = peek().op;
      ++at;
      n.rhs = operand();
    } else {
      n.kind = Predicate::Node::Kind::Truthy;
    }
    return push(std::move(n));
  }
};

Predicate Predicate::parse(std::string_view text) {
  Predicate p;
  p.source_ = std::string(text);
  PredicateParser parser{tokenize(text), 0, p};
  if (parser.peek().kind == Tok::End) parse_error(0, "empty predicate");
  parser.parse_or();
  if (parser.peek().kind != Tok::End) parse_error(parser.peek().pos, "unexpected trailing input");
  return p;
}

namespace {

ColumnType operand_type(const Predicate::Operand& o, const DataTable& table) {
  switch (o.kind) {
    case Predicate::Operand::Kind::Field: return table.column(o.field).type;
    case Predicate::Operand::Kind::Number: return ColumnType::Number;
    case Predicate::Operand::Kind::Text: return ColumnType::Text;
    case Predicate::Operand::Kind::Bool: return ColumnType::Boolean;
  }
  return ColumnType::Number;
}

const DataValue& operand_value(const Predicate::Operand& o, const DataTable& table, std::size_t row) {
  if (o.kind == Predicate::Operand::Kind::Field) return table.at(row, table.column_index(o.field));
  return o.literal;
}

template <typename T>
bool compare(Predicate::Op op, const T& a, const T& b) {
  switch (op) {
    case Predicate::Op::Lt: return a < b;
    case Predicate::Op::Le: return a <= b;
    case Predicate::Op::Eq: return a == b;
    case Predicate::Op::Ne: return a != b;
    case Predicate::Op::Ge: return a >= b;
    case Predicate::Op::Gt: return a > b;
  }
  return false;
}

}  // namespace

void Predicate::check(const DataTable& table) const {
  for (const auto& n : nodes_) {
    if (n.kind == Node::Kind::Compare) {
      ColumnType a = operand_type(n.lhs, table);
      ColumnType b = operand_type(n.rhs, table);
      if (a != b) {
        fail(ErrorCode::TypeMismatch, "'" + source_ + "' compares " + std::string(to_string(a)) + " with " +
                                          std::string(to_string(b)));
      }
      if (a == ColumnType::Boolean && n.op != Op::Eq && n.op != Op::Ne) {
        fail(ErrorCode::TypeMismatch, "'" + source_ + "' orders boolean values");
      }
    } else if (n.kind == Node::Kind::Truthy) {
      if (operand_type(n.lhs, table) != ColumnType::Boolean) {
        fail(ErrorCode::TypeMismatch, "'" + source_ + "' uses a non-boolean operand as a condition");
      }
    }
  }
}

bool Predicate::evaluate(const DataTable& table, std::size_t row) const {
  auto eval = [&](auto&& self, std::size_t idx) -> bool {
    const Node& n = nodes_[idx];
    switch (n.kind) {
      case Node::Kind::And: return self(self, n.a) && self(self, n.b);
      case Node::Kind::Or: return self(self, n.a) || self(self, n.b);
      case Node::Kind::Not: return !self(self, n.a);
      case Node::Kind::Truthy: return std::get<bool>(operand_value(n.lhs, table, row));
      case Node::Kind::Compare: {
        const DataValue& a = operand_value(n.lhs, table, row);
        const DataValue& b = operand_value(n.rhs, table, row);
        if (is_number(a)) return compare(n.op, std::get<double>(a), std::get<double>(b));
        if (is_text(a)) return compare(n.op, std::get<std::string>(a), std::get<std::string>(b));
        return compare(n.op, std::get<bool>(a), std::get<bool>(b));
      }
    }
    return false;
  };
  return eval(eval, nodes_.size() - 1);
}

DataTable apply_filter(const DataTable& table, const Predicate& predicate) {
  predicate.check(table);
  std::vector<std::size_t> cols;
  for (const auto& f : predicate.fields()) cols.push_back(table.column_index(f));
  std::vector<Row> kept;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    bool has_null = false;
    for (std::size_t c : cols) has_null |= is_null(table.at(r, c));
    if (has_null) continue;
    if (predicate.evaluate(table, r)) kept.push_back(table.rows()[r]);
  }
  return DataTable::with_columns(table.name(), table.columns(), std::move(kept));
}

DataTable apply_filter(const DataTable& table, std::string_view predicate) {
  return apply_filter(table, Predicate::parse(predicate));
}

}  // namespace gogc
