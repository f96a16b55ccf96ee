#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "abd/harness.hpp"

namespace abd {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& what)
    : StructuralError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '+';
  });
}

class Parser {
 public:
  Parser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  AbductionInstance run() {
    std::string line;
    bool header_seen = false;
    bool any_directive = false;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      const std::string& kw = tokens[0].text;
      if (kw == "abd") {
        if (header_seen || any_directive) fail(tokens[0], "header must be the first directive");
        if (tokens.size() != 2 || tokens[1].text != "1") {
          fail(tokens.size() > 1 ? tokens[1] : tokens[0], "unsupported format version");
        }
        header_seen = true;
        continue;
      }
      any_directive = true;
      if (kw == "vars") parse_vars(tokens);
      else if (kw == "rel") parse_rel(tokens);
      else if (kw == "con") parse_con(tokens);
      else if (kw == "hyp") parse_list(tokens, hyp_);
      else if (kw == "man") parse_list(tokens, man_);
      else fail(tokens[0], "unknown directive '" + kw + "'");
    }
    if (!vars_) throw ParseError(source_, line_no_ + 1, 1, "missing 'vars' line");
    Formula kb(*vars_);
    for (const auto& c : constraints_) kb.add(c);
    return AbductionInstance::make(std::move(kb), hyp_, man_);
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    throw ParseError(source_, line_no_, at.column, what);
  }

  std::uint64_t number(const Token& t) const {
    std::uint64_t v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) fail(t, "expected a non-negative integer, got '" + t.text + "'");
    return v;
  }

  Var variable(const Token& t) const {
    if (!vars_) fail(t, "'vars' must precede variable references");
    const std::uint64_t v = number(t);
    if (v == 0 || v > *vars_) {
      fail(t, "variable " + t.text + " out of range 1.." + std::to_string(*vars_));
    }
    return static_cast<Var>(v);
  }

  void parse_vars(const std::vector<Token>& tokens) {
    if (vars_) fail(tokens[0], "duplicate 'vars' line");
    if (tokens.size() != 2) fail(tokens[0], "expected 'vars <n>'");
    const std::uint64_t n = number(tokens[1]);
    if (n > 1'000'000) fail(tokens[1], "too many variables");
    vars_ = static_cast<Var>(n);
  }

  void parse_rel(const std::vector<Token>& tokens) {
    if (tokens.size() < 3 || tokens.size() > 4) fail(tokens[0], "expected 'rel <name> <arity> [tuples]'");
    const Token& name = tokens[1];
    if (!valid_name(name.text)) fail(name, "invalid relation name '" + name.text + "'");
    if (relations_.count(name.text)) fail(name, "relation '" + name.text + "' defined twice");
    const std::uint64_t arity = number(tokens[2]);
    if (arity > Relation::kMaxArity) fail(tokens[2], "arity above " + std::to_string(Relation::kMaxArity));
    std::vector<Relation::Tuple> tuples;
    if (tokens.size() == 4) {
      const Token& field = tokens[3];
      std::size_t pos = 0;
      const std::string& s = field.text;
      while (pos <= s.size()) {
        const std::size_t end = std::min(s.find(';', pos), s.size());
        const std::string item = s.substr(pos, end - pos);
        const Token at{item, field.column + pos};
        if (arity == 0) {
          if (item != "()") fail(at, "0-ary tuples are written '()'");
          tuples.push_back(0);
        } else {
          if (item.size() != arity) {
            fail(at, "tuple '" + item + "' has length " + std::to_string(item.size()) + ", arity is " +
                         std::to_string(arity));
          }
          Relation::Tuple t = 0;
          for (std::size_t i = 0; i < item.size(); ++i) {
            if (item[i] == '1') t |= Relation::Tuple{1} << i;
            else if (item[i] != '0') fail({item, at.column + i}, "tuple digits must be 0 or 1");
          }
          tuples.push_back(t);
        }
        pos = end + 1;
      }
    }
    relations_[name.text] = make_ref(Relation(static_cast<unsigned>(arity), std::move(tuples), name.text));
  }

  void parse_con(const std::vector<Token>& tokens) {
    if (tokens.size() < 2) fail(tokens[0], "expected 'con <name> <vars...>'");
    auto it = relations_.find(tokens[1].text);
    if (it == relations_.end()) fail(tokens[1], "unknown relation '" + tokens[1].text + "'");
    const RelationRef& r = it->second;
    if (tokens.size() - 2 != r->arity()) {
      fail(tokens[1], "relation '" + tokens[1].text + "' has arity " + std::to_string(r->arity()) + ", got " +
                          std::to_string(tokens.size() - 2) + " variables");
    }
    std::vector<Var> scope;
    for (std::size_t i = 2; i < tokens.size(); ++i) scope.push_back(variable(tokens[i]));
    constraints_.push_back({r, std::move(scope)});
  }

  void parse_list(const std::vector<Token>& tokens, std::vector<Var>& out) {
    for (std::size_t i = 1; i < tokens.size(); ++i) out.push_back(variable(tokens[i]));
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
  std::optional<Var> vars_;
  std::map<std::string, RelationRef> relations_;
  std::vector<Constraint> constraints_;
  std::vector<Var> hyp_;
  std::vector<Var> man_;
};

std::string tuple_field(const Relation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ';';
    out += r.arity() == 0 ? "()" : r.tuple_string(r.tuples()[i]);
  }
  return out;
}

}  // namespace

AbductionInstance parse_instance(std::istream& in, const std::string& source) {
  return Parser(in, source).run();
}

AbductionInstance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in, "<string>");
}

AbductionInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  return parse_instance(in, path);
}

void write_instance(std::ostream& out, const AbductionInstance& inst) {
  std::unordered_map<RelationRef, std::string, RelationHash, RelationEq> names;
  std::vector<RelationRef> order;
  std::set<std::string> used;
  for (const auto& c : inst.kb.constraints()) {
    if (names.count(c.relation)) continue;
    order.push_back(c.relation);
    names[c.relation] = "";
  }
  // Labels first so generated names never shadow a real one.
  for (const auto& r : order) {
    if (valid_name(r->name()) && used.insert(r->name()).second) names[r] = r->name();
  }
  std::size_t counter = 0;
  for (const auto& r : order) {
    if (!names[r].empty()) continue;
    std::string name;
    do name = "R" + std::to_string(++counter);
    while (used.count(name));
    used.insert(name);
    names[r] = name;
  }

  out << "abd 1\n";
  out << "vars " << inst.num_vars() << '\n';
  for (const auto& r : order) {
    out << "rel " << names[r] << ' ' << r->arity();
    if (!r->empty()) out << ' ' << tuple_field(*r);
    out << '\n';
  }
  for (const auto& c : inst.kb.constraints()) {
    out << "con " << names[c.relation];
    for (Var v : c.scope) out << ' ' << v;
    out << '\n';
  }
  out << "hyp";
  for (Var v : inst.hypotheses) out << ' ' << v;
  out << "\nman";
  for (Var v : inst.manifestations) out << ' ' << v;
  out << '\n';
}

std::string format_instance(const AbductionInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

void save_instance(const std::string& path, const AbductionInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  write_instance(out, inst);
}

std::string format_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (const Literal& l : c) out << l.to_int() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace abd
