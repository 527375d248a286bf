#include <algorithm>
#include <istream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "morsekit/complex.hpp"
#include "morsekit/error.hpp"

namespace morsekit {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') ||
           ch == '_';
  });
}

struct PendingTerm {
  std::string name;
  Integer coeff;
  std::size_t line;
  std::size_t column;
};

struct PendingBoundary {
  std::string source;
  std::size_t line;
  std::size_t column;
  std::vector<PendingTerm> terms;
};

}  // namespace

FilteredComplex parse_complex(std::string_view text) {
  std::optional<int> ambient;
  std::vector<CriticalPoint> points;
  std::map<std::string, PointId, std::less<>> index;
  std::vector<PendingBoundary> boundaries;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    auto fail = [&](const Token& at, const std::string& msg) -> ParseError {
      return ParseError(ErrorCode::Syntax, line_no, at.column, msg);
    };
    const std::string_view keyword = tokens[0].text;

    if (!ambient) {
      if (keyword != "ambient" || tokens.size() != 2)
        throw fail(tokens[0], "expected 'ambient <positive integer>' as the first line");
      auto n = parse_integer(tokens[1].text);
      if (!n || *n <= 0 || !n->fits_sint_p())
        throw fail(tokens[1], "ambient dimension must be a positive integer");
      ambient = static_cast<int>(n->get_si());
    } else if (keyword == "point") {
      if (tokens.size() != 4) throw fail(tokens[0], "expected 'point <name> <degree> <value>'");
      if (!valid_name(tokens[1].text))
        throw fail(tokens[1], "point names must match [A-Za-z0-9_]+");
      auto deg = parse_integer(tokens[2].text);
      if (!deg || !deg->fits_sint_p()) throw fail(tokens[2], "degree must be an integer");
      auto value = parse_rational(tokens[3].text);
      if (!value)
        throw fail(tokens[3], "value must be an integer or p/q in lowest terms with q > 0");
      std::string name(tokens[1].text);
      if (index.count(name))
        throw ParseError(ErrorCode::DuplicatePoint, line_no, tokens[1].column,
                         "duplicate point name '" + name + "'");
      index.emplace(name, points.size());
      points.push_back({std::move(name), static_cast<int>(deg->get_si()), *value});
    } else if (keyword == "boundary") {
      if (tokens.size() < 3 || tokens[2].text != ":")
        throw fail(tokens[0], "expected 'boundary <name> : <c>*<name> ...'");
      if (!valid_name(tokens[1].text))
        throw fail(tokens[1], "point names must match [A-Za-z0-9_]+");
      PendingBoundary b{std::string(tokens[1].text), line_no, tokens[1].column, {}};
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        const auto star = tok.text.find('*');
        if (star == std::string_view::npos)
          throw fail(tok, "boundary term must look like <coefficient>*<name>");
        auto coeff = parse_integer(tok.text.substr(0, star));
        if (!coeff || *coeff == 0)
          throw ParseError(ErrorCode::InvalidCoefficient, line_no, tok.column,
                           "boundary coefficient must be a nonzero integer");
        const auto target = tok.text.substr(star + 1);
        if (!valid_name(target))
          throw fail(tok, "point names must match [A-Za-z0-9_]+");
        b.terms.push_back({std::string(target), *coeff, line_no, tok.column + star + 1});
      }
      boundaries.push_back(std::move(b));
    } else {
      throw fail(tokens[0], "unknown directive '" + std::string(keyword) + "'");
    }
    if (eol == text.size()) break;
  }
  if (!ambient) throw ParseError(ErrorCode::Syntax, line_no, 1, "missing 'ambient' line");

  std::vector<BoundaryEntry> entries;
  std::vector<bool> seen(points.size(), false);
  for (const auto& b : boundaries) {
    auto src = index.find(b.source);
    if (src == index.end())
      throw ParseError(ErrorCode::UnknownPoint, b.line, b.column,
                       "unknown point '" + b.source + "'");
    if (seen[src->second])
      throw ParseError(ErrorCode::Syntax, b.line, b.column,
                       "second boundary line for '" + b.source + "'");
    seen[src->second] = true;
    for (const auto& t : b.terms) {
      auto tgt = index.find(t.name);
      if (tgt == index.end())
        throw ParseError(ErrorCode::UnknownPoint, t.line, t.column,
                         "unknown point '" + t.name + "'");
      for (const auto& e : entries)
        if (e.source == src->second && e.target == tgt->second)
          throw ParseError(ErrorCode::InvalidCoefficient, t.line, t.column,
                           "repeated term '" + t.name + "'");
      if (points[tgt->second].degree != points[src->second].degree - 1)
        throw ParseError(ErrorCode::DimensionMismatch, t.line, t.column,
                         "'" + t.name + "' is not one degree below '" + b.source + "'");
      entries.push_back({src->second, tgt->second, t.coeff});
    }
  }
  return FilteredComplex(*ambient, std::move(points), entries);
}

FilteredComplex parse_complex(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_complex(std::string_view(text));
}

std::string serialize(const FilteredComplex& c) {
  std::ostringstream out;
  out << "ambient " << c.ambient_dim() << '\n';
  for (const auto& p : c.points())
    out << "point " << p.name << ' ' << p.degree << ' ' << to_string(p.value) << '\n';
  for (PointId s = 0; s < c.size(); ++s) {
    const auto terms = c.boundary(s);
    if (terms.empty()) continue;
    out << "boundary " << c.point(s).name << " :";
    for (const auto& t : terms) out << ' ' << to_string(t.coeff) << '*' << c.point(t.target).name;
    out << '\n';
  }
  return out.str();
}

}  // namespace morsekit
