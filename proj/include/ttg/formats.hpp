#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphisms.hpp"
#include "presentation.hpp"

namespace ttg {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& message, int line_ = 0, int column_ = 0)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ", col " +
                                           std::to_string(column_) + ": " + message
                                     : message),
        line(line_),
        column(column_) {}
};

namespace detail {

struct SourceLine {
  std::string section;  // active section at this line
  std::string text;     // declaration payload, comments stripped
  int number;           // 1-based
  int offset;           // 0-based column of text within the raw line
};

inline std::string_view trim(std::string_view s, int* dropped_front = nullptr) {
  int front = 0;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++front;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (dropped_front) *dropped_front = front;
  return s;
}

inline bool valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

/// Splits a document into section-tagged declaration lines. A section header
/// may carry an inline first declaration; sections may repeat and appear in
/// any order.
inline std::vector<SourceLine> section_lines(std::string_view text,
                                             const std::vector<std::string>& known_sections) {
  std::vector<SourceLine> out;
  std::string section;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                          : eol - pos);
    ++number;
    const std::size_t comment = raw.find('#');
    if (comment != std::string_view::npos) raw = raw.substr(0, comment);
    int front = 0;
    std::string_view line = trim(raw, &front);
    if (!line.empty()) {
      int offset = front;
      if (line.front() == '[') {
        const std::size_t close = line.find(']');
        if (close == std::string_view::npos)
          throw ParseError("malformed section header", number, offset + 1);
        const std::string name(trim(line.substr(1, close - 1)));
        bool known = false;
        for (const std::string& candidate : known_sections)
          if (candidate == name) known = true;
        if (!known) throw ParseError("unknown section [" + name + "]", number, offset + 1);
        section = name;
        int inner = 0;
        line = trim(line.substr(close + 1), &inner);
        offset += static_cast<int>(close) + 1 + inner;
        if (line.empty()) {
          if (eol == std::string_view::npos) break;
          pos = eol + 1;
          continue;
        }
      }
      if (section.empty())
        throw ParseError("declaration before any section header", number, offset + 1);
      out.push_back(SourceLine{section, std::string(line), number, offset});
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

inline std::vector<std::pair<std::string, int>> split_tokens(const SourceLine& line) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < line.text.size()) {
    while (i < line.text.size() && std::isspace(static_cast<unsigned char>(line.text[i]))) ++i;
    if (i >= line.text.size()) break;
    const std::size_t start = i;
    while (i < line.text.size() && !std::isspace(static_cast<unsigned char>(line.text[i]))) ++i;
    out.emplace_back(line.text.substr(start, i - start),
                     line.offset + static_cast<int>(start) + 1);
  }
  return out;
}

/// "0" or a comma-separated token list; `lookup` resolves each token.
template <typename Lookup>
auto parse_listed(std::string_view expr, const SourceLine& line, int column, Lookup&& lookup) {
  using Result = decltype(lookup(std::string_view{}, 0, 0));
  Result out{};
  std::string_view body = trim(expr);
  if (body == "0") return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    std::string_view token =
        body.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start);
    int dropped = 0;
    token = trim(token, &dropped);
    if (token.empty()) throw ParseError("malformed object list", line.number, column);
    out |= lookup(token, line.number, column + static_cast<int>(start) + dropped);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Presentation format.

inline Presentation parse_presentation(std::string_view text) {
  const std::vector<detail::SourceLine> lines =
      detail::section_lines(text, {"atoms", "unit", "shift", "tensor", "triangles"});

  // Atom names first: sections are order-insensitive, so references may
  // precede the [atoms] block.
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  for (const detail::SourceLine& line : lines) {
    if (line.section != "atoms") continue;
    for (const auto& [token, column] : detail::split_tokens(line)) {
      if (token == "0")
        throw ParseError("atom id '0' is reserved for the zero object", line.number, column);
      if (!detail::valid_token(token))
        throw ParseError("invalid atom id '" + token + "'", line.number, column);
      if (index.count(token))
        throw ParseError("duplicate atom '" + token + "'", line.number, column);
      index.emplace(token, static_cast<int>(names.size()));
      names.push_back(token);
    }
  }
  if (static_cast<int>(names.size()) > Presentation::max_atoms)
    throw ParseError("too many atoms (max 16)");

  auto atom_lookup = [&](std::string_view token, int line_no, int column) {
    auto it = index.find(std::string(token));
    if (it == index.end())
      throw ParseError("unknown atom '" + std::string(token) + "'", line_no, column);
    return AtomSet::single(it->second);
  };
  const int n = static_cast<int>(names.size());

  std::optional<ObjectClass> unit;
  std::vector<std::optional<ObjectClass>> shift(static_cast<std::size_t>(n));
  std::vector<std::vector<std::optional<ObjectClass>>> tensor(
      static_cast<std::size_t>(n),
      std::vector<std::optional<ObjectClass>>(static_cast<std::size_t>(n)));
  std::vector<Triangle> triangles;

  for (const detail::SourceLine& line : lines) {
    if (line.section == "atoms") continue;
    const int column = line.offset + 1;
    if (line.section == "unit") {
      if (unit) throw ParseError("duplicate [unit] declaration", line.number, column);
      unit = detail::parse_listed(line.text, line, column, atom_lookup);
    } else if (line.section == "shift") {
      const std::size_t arrow = line.text.find("->");
      if (arrow == std::string::npos)
        throw ParseError("expected 'atom->object'", line.number, column);
      const std::string token(detail::trim(std::string_view(line.text).substr(0, arrow)));
      const AtomSet atom = atom_lookup(token, line.number, column);
      const int x = *atom.begin();
      if (shift[static_cast<std::size_t>(x)])
        throw ParseError("duplicate shift entry (" + token + ")", line.number, column);
      shift[static_cast<std::size_t>(x)] =
          detail::parse_listed(std::string_view(line.text).substr(arrow + 2), line,
                               column + static_cast<int>(arrow) + 2, atom_lookup);
    } else if (line.section == "tensor") {
      const std::size_t eq = line.text.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected 'atom*atom=object'", line.number, column);
      const std::string_view lhs = std::string_view(line.text).substr(0, eq);
      const std::size_t star = lhs.find('*');
      if (star == std::string_view::npos)
        throw ParseError("expected 'atom*atom=object'", line.number, column);
      const std::string first(detail::trim(lhs.substr(0, star)));
      const std::string second(detail::trim(lhs.substr(star + 1)));
      const int x = *atom_lookup(first, line.number, column).begin();
      const int y = *atom_lookup(second, line.number, column + static_cast<int>(star) + 1).begin();
      const ObjectClass value =
          detail::parse_listed(std::string_view(line.text).substr(eq + 1), line,
                               column + static_cast<int>(eq) + 1, atom_lookup);
      auto& slot = tensor[static_cast<std::size_t>(std::min(x, y))]
                         [static_cast<std::size_t>(std::max(x, y))];
      if (slot && *slot != value)
        throw ParseError("conflicting tensor entry (" + first + "," + second + ")", line.number,
                         column);
      slot = value;
    } else if (line.section == "triangles") {
      std::vector<ObjectClass> parts;
      std::size_t start = 0;
      while (true) {
        const std::size_t semi = line.text.find(';', start);
        const std::string_view piece =
            std::string_view(line.text).substr(start, semi == std::string::npos
                                                          ? std::string_view::npos
                                                          : semi - start);
        parts.push_back(detail::parse_listed(piece, line, column + static_cast<int>(start),
                                             atom_lookup));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      if (parts.size() != 3)
        throw ParseError("a triangle needs exactly three components", line.number, column);
      triangles.push_back(Triangle{parts[0], parts[1], parts[2]});
    }
  }

  if (!unit) throw ParseError("missing [unit] declaration");
  for (int x = 0; x < n; ++x)
    if (!shift[static_cast<std::size_t>(x)])
      throw ParseError("missing shift entry (" + names[static_cast<std::size_t>(x)] + ")");
  std::vector<std::vector<ObjectClass>> tensor_table(
      static_cast<std::size_t>(n), std::vector<ObjectClass>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      const auto& slot = tensor[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (!slot)
        throw ParseError("missing tensor entry (" + names[static_cast<std::size_t>(x)] + "," +
                         names[static_cast<std::size_t>(y)] + ")");
      tensor_table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = *slot;
      tensor_table[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = *slot;
    }
  std::vector<ObjectClass> shift_table;
  for (auto& entry : shift) shift_table.push_back(*entry);

  return Presentation(names, *unit, tensor_table, shift_table, triangles);
}

inline std::string class_to_file_string(const Presentation& p, ObjectClass a) {
  if (a.empty()) return "0";
  std::string out;
  bool sep = false;
  for (const std::string& name : object_names_sorted(p, a)) {
    if (sep) out += ",";
    out += name;
    sep = true;
  }
  return out;
}

inline std::string write_presentation(const Presentation& p) {
  std::string out = "[atoms]";
  for (const std::string& name : p.atom_names()) out += " " + name;
  out += "\n[unit] " + class_to_file_string(p, p.unit()) + "\n";
  out += "[shift]\n";
  for (int x = 0; x < p.atom_count(); ++x)
    out += p.atom_name(x) + "->" + class_to_file_string(p, p.shift(x)) + "\n";
  out += "[tensor]\n";
  for (int x = 0; x < p.atom_count(); ++x)
    for (int y = x; y < p.atom_count(); ++y)
      out += p.atom_name(x) + "*" + p.atom_name(y) + "=" +
             class_to_file_string(p, p.tensor(x, y)) + "\n";
  if (!p.declared_triangles().empty()) {
    out += "[triangles]\n";
    for (const Triangle& t : p.declared_triangles())
      out += class_to_file_string(p, t.a) + ";" + class_to_file_string(p, t.b) + ";" +
             class_to_file_string(p, t.c) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Support-data format: "[space] point: closure-points" and
// "[sigma] atom = point,point" lines.

inline SupportData parse_support_data(std::string_view text, const Presentation& model) {
  const std::vector<detail::SourceLine> lines = detail::section_lines(text, {"space", "sigma"});

  FiniteSpace space;
  std::unordered_map<std::string, int> point_index;
  for (const detail::SourceLine& line : lines) {
    if (line.section != "space") continue;
    const std::size_t colon = line.text.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'point: closure-points'", line.number, line.offset + 1);
    const std::string name(detail::trim(std::string_view(line.text).substr(0, colon)));
    if (!detail::valid_token(name))
      throw ParseError("invalid point id '" + name + "'", line.number, line.offset + 1);
    if (point_index.count(name))
      throw ParseError("duplicate point '" + name + "'", line.number, line.offset + 1);
    point_index.emplace(name, static_cast<int>(space.point_names.size()));
    space.point_names.push_back(name);
  }
  if (static_cast<int>(space.point_names.size()) > PointSet::capacity())
    throw ParseError("too many points (max 64)");

  auto point_lookup = [&](std::string_view token, int line_no, int column) {
    auto it = point_index.find(std::string(token));
    if (it == point_index.end())
      throw ParseError("unknown point '" + std::string(token) + "'", line_no, column);
    return PointSet::single(it->second);
  };

  space.point_closures.resize(space.point_names.size());
  std::vector<bool> closure_seen(space.point_names.size(), false);
  std::vector<std::optional<PointSet>> sigma(static_cast<std::size_t>(model.atom_count()));

  for (const detail::SourceLine& line : lines) {
    const int column = line.offset + 1;
    if (line.section == "space") {
      const std::size_t colon = line.text.find(':');
      const std::string name(detail::trim(std::string_view(line.text).substr(0, colon)));
      const int i = *point_lookup(name, line.number, column).begin();
      if (closure_seen[static_cast<std::size_t>(i)])
        throw ParseError("duplicate closure for point '" + name + "'", line.number, column);
      closure_seen[static_cast<std::size_t>(i)] = true;
      space.point_closures[static_cast<std::size_t>(i)] =
          detail::parse_listed(std::string_view(line.text).substr(colon + 1), line,
                               column + static_cast<int>(colon) + 1, point_lookup);
    } else {
      const std::size_t eq = line.text.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected 'atom = points'", line.number, column);
      const std::string token(detail::trim(std::string_view(line.text).substr(0, eq)));
      const auto atom = model.find_atom(token);
      if (!atom) throw ParseError("unknown atom '" + token + "'", line.number, column);
      if (sigma[static_cast<std::size_t>(*atom)])
        throw ParseError("duplicate sigma entry (" + token + ")", line.number, column);
      sigma[static_cast<std::size_t>(*atom)] =
          detail::parse_listed(std::string_view(line.text).substr(eq + 1), line,
                               column + static_cast<int>(eq) + 1, point_lookup);
    }
  }

  for (int a = 0; a < model.atom_count(); ++a)
    if (!sigma[static_cast<std::size_t>(a)])
      throw ParseError("missing sigma entry (" + model.atom_name(a) + ")");

  SupportData data;
  data.space = std::move(space);
  for (auto& entry : sigma) data.sigma.push_back(*entry);
  return data;
}

// ---------------------------------------------------------------------------
// Functor format: "[map] atom -> object" lines plus optional source/target
// file references.

inline ModelFunctor parse_model_functor(std::string_view text, const Presentation& source,
                                        const Presentation& target) {
  const std::vector<detail::SourceLine> lines =
      detail::section_lines(text, {"source", "target", "map"});

  auto target_lookup = [&](std::string_view token, int line_no, int column) {
    const auto atom = target.find_atom(token);
    if (!atom)
      throw ParseError("unknown target atom '" + std::string(token) + "'", line_no, column);
    return AtomSet::single(*atom);
  };

  std::vector<std::optional<ObjectClass>> images(static_cast<std::size_t>(source.atom_count()));
  for (const detail::SourceLine& line : lines) {
    if (line.section != "map") continue;  // source/target lines are references only
    const int column = line.offset + 1;
    const std::size_t arrow = line.text.find("->");
    if (arrow == std::string::npos)
      throw ParseError("expected 'atom -> object'", line.number, column);
    const std::string token(detail::trim(std::string_view(line.text).substr(0, arrow)));
    const auto atom = source.find_atom(token);
    if (!atom) throw ParseError("unknown source atom '" + token + "'", line.number, column);
    if (images[static_cast<std::size_t>(*atom)])
      throw ParseError("duplicate map entry (" + token + ")", line.number, column);
    images[static_cast<std::size_t>(*atom)] =
        detail::parse_listed(std::string_view(line.text).substr(arrow + 2), line,
                             column + static_cast<int>(arrow) + 2, target_lookup);
  }
  for (int x = 0; x < source.atom_count(); ++x)
    if (!images[static_cast<std::size_t>(x)])
      throw ParseError("missing map entry (" + source.atom_name(x) + ")");

  ModelFunctor functor;
  functor.source = source;
  functor.target = target;
  for (auto& image : images) functor.atom_images.push_back(*image);
  return functor;
}

}  // namespace ttg
