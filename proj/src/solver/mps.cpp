#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "railflow/solver.hpp"

namespace railflow {

namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-20.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string name(std::string n) {
  for (char& c : n)
    if (c == ' ' || c == '\t') c = '_';
  return n;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

char row_type(Relation r) {
  switch (r) {
    case Relation::less_equal: return 'L';
    case Relation::greater_equal: return 'G';
    case Relation::equal: return 'E';
  }
  return 'E';
}

void line(std::string& out, std::string text) {
  while (!text.empty() && text.back() == ' ') text.pop_back();
  out += text;
  out += '\n';
}

}  // namespace

std::string export_model_text(const TimeExpandedModel& model) {
  const auto& vars = model.variables();
  const auto& rows = model.constraints();

  std::size_t col_w = 8;
  for (const auto& v : vars) col_w = std::max(col_w, v.name.size());
  std::size_t row_w = 8;
  for (const auto& c : rows) row_w = std::max(row_w, c.name.size());
  col_w += 2;
  row_w += 2;

  // Column-major entries.
  std::vector<std::vector<std::pair<int, double>>> by_col(vars.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const Term& t : rows[i].terms) by_col[static_cast<std::size_t>(t.column)].push_back({static_cast<int>(i), t.coefficient});

  std::string out;
  line(out, "NAME          railflow");
  line(out, "ROWS");
  line(out, " N  OBJ");
  for (const auto& c : rows) line(out, std::string(" ") + row_type(c.relation) + "  " + name(c.name));

  line(out, "COLUMNS");
  const auto& obj = model.objective();
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    const bool integral = v.integer && !model.integrality_relaxed();
    if (integral != in_int) {
      char m[32];
      std::snprintf(m, sizeof m, "MARKER%04d", marker++);
      line(out, "    " + pad(m, col_w) + pad("'MARKER'", row_w) + (integral ? "'INTORG'" : "'INTEND'"));
      in_int = integral;
    }
    const std::string cn = "    " + pad(name(v.name), col_w);
    const double c = j < obj.size() ? obj[j] : 0.0;
    if (c != 0.0 || by_col[j].empty()) line(out, cn + pad("OBJ", row_w) + number(c));
    for (const auto& [i, a] : by_col[j]) line(out, cn + pad(name(rows[static_cast<std::size_t>(i)].name), row_w) + number(a));
  }
  if (in_int) {
    char m[32];
    std::snprintf(m, sizeof m, "MARKER%04d", marker++);
    line(out, "    " + pad(m, col_w) + pad("'MARKER'", row_w) + "'INTEND'");
  }

  line(out, "RHS");
  for (const auto& c : rows)
    if (c.rhs != 0.0) line(out, "    " + pad("RHS", col_w) + pad(name(c.name), row_w) + number(c.rhs));

  line(out, "BOUNDS");
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (const auto& v : vars) {
    const std::string n = pad(name(v.name), col_w);
    auto bound = [&](const char* kind, double value) { line(out, std::string(" ") + kind + " " + pad("BND", 8) + n + number(value)); };
    auto flag = [&](const char* kind) { line(out, std::string(" ") + kind + " " + pad("BND", 8) + n); };
    if (v.lower == -inf && v.upper == inf) {
      flag("FR");
      continue;
    }
    if (v.lower == v.upper) {
      bound("FX", v.lower);
      continue;
    }
    if (v.lower == -inf) flag("MI");
    else if (v.lower != 0.0) bound("LO", v.lower);
    else if (v.integer && !model.integrality_relaxed()) bound("LO", 0.0);
    if (v.upper != inf) bound("UP", v.upper);
  }
  line(out, "ENDATA");
  return out;
}

}  // namespace railflow
