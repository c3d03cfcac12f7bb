#include "crn/parser.hpp"

#include "crn/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace crn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const { throw ParseError(line_, pos + 1, what); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::size_t pos() {
    skip_ws();
    return pos_;
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !is_ident_start(s_[pos_])) fail("expected species name");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < s_.size() && (s_[end] == '+' || s_[end] == '-')) ++end;
    bool digits = false;
    while (end < s_.size() && is_digit(s_[end])) ++end, digits = true;
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      while (end < s_.size() && is_digit(s_[end])) ++end, digits = true;
    }
    if (!digits) fail("expected number");
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
      if (e < s_.size() && is_digit(s_[e])) {
        while (e < s_.size() && is_digit(s_[e])) ++e;
        end = e;
      }
    }
    std::string tok(s_.substr(start, end - start));
    if (tok.front() == '+') tok.erase(0, 1);
    double v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) fail_at(start, "invalid number");
    pos_ = end;
    return v;
  }

  std::vector<Term> complex() {
    skip_ws();
    std::vector<Term> terms;
    // lone "0" is the zero complex
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t after = pos_ + 1;
      while (after < s_.size() && is_digit(s_[after])) ++after;
      std::size_t look = after;
      while (look < s_.size() && (s_[look] == ' ' || s_[look] == '\t')) ++look;
      if (after == pos_ + 1 && (look >= s_.size() || !is_ident_start(s_[look]))) {
        pos_ = after;
        return terms;
      }
    }
    for (;;) {
      terms.push_back(term());
      if (!accept("+")) break;
    }
    return terms;
  }

  std::size_t line() const { return line_; }

 private:
  Term term() {
    skip_ws();
    Term t;
    if (pos_ < s_.size() && is_digit(s_[pos_])) {
      const std::size_t start = pos_;
      long long c = 0;
      while (pos_ < s_.size() && is_digit(s_[pos_])) {
        c = c * 10 + (s_[pos_] - '0');
        if (c > 1000000) fail_at(start, "stoichiometric coefficient too large");
        ++pos_;
      }
      if (pos_ < s_.size() && s_[pos_] == '.') fail_at(start, "stoichiometric coefficients must be integers");
      if (c == 0) fail_at(start, "zero stoichiometric coefficient");
      t.coefficient = static_cast<int>(c);
    }
    t.species = ident();
    return t;
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::map<std::string, int> combine(const std::vector<Term>& terms) {
  std::map<std::string, int> m;
  for (const auto& t : terms) m[t.species] += t.coefficient;
  return m;
}

bool is_x0_line(std::string_view line) {
  std::size_t p = 0;
  while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
  if (line.substr(p, 2) != "x0") return false;
  p += 2;
  while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
  return p < line.size() && line[p] == ':';
}

struct PendingX0 {
  std::string name;
  std::size_t line;
  std::size_t column;
};

}  // namespace

NetworkDocument parse_document(std::string_view text) {
  NetworkDocument doc;
  std::set<std::string> species;
  std::vector<PendingX0> x0_names;
  std::size_t x0_line = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    LineParser p(line, line_no);
    if (p.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (is_x0_line(line)) {
      if (x0_line == 0) x0_line = line_no;
      p.expect("x0");
      p.expect(":");
      for (;;) {
        const std::size_t col = p.pos();
        std::string name = p.ident();
        p.expect("=");
        const std::size_t vcol = p.pos();
        const double v = p.number();
        if (!(v > 0)) p.fail_at(vcol, "initial concentrations must be strictly positive");
        for (const auto& [n, _] : doc.x0)
          if (n == name) p.fail_at(col, "duplicate initial value for '" + name + "'");
        x0_names.push_back({name, line_no, col + 1});
        doc.x0.emplace_back(std::move(name), v);
        if (!p.accept(",")) break;
      }
      if (!p.at_end()) p.fail("unexpected trailing input");
    } else {
      ReactionLine r;
      r.lhs = p.complex();
      if (p.accept("<->")) {
        r.reversible = true;
      } else if (!p.accept("->")) {
        p.fail("expected '->' or '<->'");
      }
      const std::size_t rhs_col = p.pos();
      r.rhs = p.complex();
      if (p.accept(";")) {
        p.expect("k");
        p.expect("=");
        for (;;) {
          const std::size_t col = p.pos();
          const double k = p.number();
          if (!(k > 0)) p.fail_at(col, "rate constants must be positive");
          r.rates.push_back(k);
          if (!p.accept(",")) break;
        }
        if (r.rates.size() > (r.reversible ? 2u : 1u)) p.fail("too many rate constants for this arrow");
      }
      if (!p.at_end()) p.fail("unexpected trailing input");
      if (combine(r.lhs) == combine(r.rhs)) p.fail_at(rhs_col, "source equals product");
      for (const auto& t : r.lhs) species.insert(t.species);
      for (const auto& t : r.rhs) species.insert(t.species);
      doc.reactions.push_back(std::move(r));
    }
    if (end == text.size()) break;
  }
  for (const auto& x : x0_names)
    if (!species.count(x.name)) throw ParseError(x.line, x.column, "unknown species '" + x.name + "' in x0");
  if (x0_line != 0)
    for (const auto& s : species) {
      bool found = false;
      for (const auto& [n, _] : doc.x0) found = found || n == s;
      if (!found) throw ParseError(x0_line, 1, "x0 does not assign species '" + s + "'");
    }
  return doc;
}

std::string serialize_document(const NetworkDocument& doc) {
  auto side = [](const std::vector<Term>& terms) {
    if (terms.empty()) return std::string("0");
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += " + ";
      if (terms[i].coefficient != 1) s += std::to_string(terms[i].coefficient) + " ";
      s += terms[i].species;
    }
    return s;
  };
  std::ostringstream os;
  for (const auto& r : doc.reactions) {
    os << side(r.lhs) << (r.reversible ? " <-> " : " -> ") << side(r.rhs);
    if (!r.rates.empty()) {
      os << " ; k = ";
      for (std::size_t i = 0; i < r.rates.size(); ++i) os << (i ? ", " : "") << format_double(r.rates[i]);
    }
    os << '\n';
  }
  if (!doc.x0.empty()) {
    os << "x0: ";
    for (std::size_t i = 0; i < doc.x0.size(); ++i)
      os << (i ? ", " : "") << doc.x0[i].first << " = " << format_double(doc.x0[i].second);
    os << '\n';
  }
  return os.str();
}

ParsedNetwork build_network(const NetworkDocument& doc) {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  auto see = [&](const std::vector<Term>& terms) {
    for (const auto& t : terms)
      if (index.emplace(t.species, static_cast<int>(names.size())).second) names.push_back(t.species);
  };
  for (const auto& r : doc.reactions) {
    see(r.lhs);
    see(r.rhs);
  }
  const auto n = static_cast<Eigen::Index>(names.size());
  auto vec = [&](const std::vector<Term>& terms) {
    Complex y = Complex::Zero(n);
    for (const auto& t : terms) y(index.at(t.species)) += t.coefficient;
    return y;
  };

  ParsedNetwork out;
  std::vector<ReactionSpec> specs;
  for (std::size_t l = 0; l < doc.reactions.size(); ++l) {
    const auto& r = doc.reactions[l];
    const Complex lhs = vec(r.lhs);
    const Complex rhs = vec(r.rhs);
    const std::size_t wanted = r.reversible ? 2 : 1;
    if (r.rates.size() < wanted)
      out.warnings.push_back("reaction " + std::to_string(l + 1) + ": missing rate constant(s) default to 1.0");
    specs.push_back({lhs, rhs, r.rates.size() > 0 ? r.rates[0] : 1.0});
    if (r.reversible) specs.push_back({rhs, lhs, r.rates.size() > 1 ? r.rates[1] : 1.0});
  }
  out.network = ReactionNetwork(names, specs);
  if (!doc.x0.empty()) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Constant(n, std::nan(""));
    for (const auto& [name, v] : doc.x0) x0(index.at(name)) = v;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::isnan(x0(i))) throw std::invalid_argument("x0 does not assign species '" + names[static_cast<std::size_t>(i)] + "'");
    out.x0 = x0;
  }
  return out;
}

ParsedNetwork parse_network(std::string_view text) { return build_network(parse_document(text)); }

ParsedNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

NetworkDocument to_document(const ReactionNetwork& net, const std::optional<Eigen::VectorXd>& x0) {
  NetworkDocument doc;
  auto terms = [&](const Complex& y) {
    std::vector<Term> t;
    for (int i = 0; i < net.num_species(); ++i)
      if (y(i) != 0) t.push_back({y(i), net.species_name(i)});
    return t;
  };
  for (int k = 0; k < net.num_reactions(); ++k) doc.reactions.push_back({terms(net.source(k)), terms(net.product(k)), false, {net.rate(k)}});
  if (x0)
    for (int i = 0; i < net.num_species(); ++i) doc.x0.emplace_back(net.species_name(i), (*x0)(i));
  return doc;
}

}  // namespace crn
