#include "ringsqz/cli/table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ringsqz/cli/config.hpp"

namespace ringsqz::cli {

std::size_t Table::index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t c = index(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

double relative_change(double base, double fine) {
  if (std::isnan(base) && std::isnan(fine)) return 0.0;
  const double d = std::abs(fine - base);
  return base != 0.0 ? d / std::abs(base) : d;
}

namespace {

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (x.size() == 1) return y[0];
  auto it = std::lower_bound(x.begin(), x.end(), at);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  hi = std::clamp<std::size_t>(hi, 1, x.size() - 1);
  const std::size_t lo = hi - 1;
  const double t = (at - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

bool same_abscissa(const Table& a, const Table& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i][0] != b.rows[i][0]) return false;
  }
  return true;
}

}  // namespace

Table with_convergence(const Table& base, const Table& fine) {
  if (base.columns.size() != fine.columns.size()) {
    throw std::invalid_argument("convergence tables have different columns");
  }
  Table out = base;
  const bool aligned = same_abscissa(base, fine);
  std::vector<double> fx;
  if (!aligned) fx = fine.column(fine.columns[0].name);

  for (std::size_t c = 1; c < base.columns.size(); ++c) {
    if (!base.columns[c].compare) continue;
    out.columns.push_back({"rel_" + base.columns[c].name, false});
    std::vector<double> fy;
    if (!aligned) fy = fine.column(fine.columns[c].name);
    for (std::size_t r = 0; r < base.rows.size(); ++r) {
      const double f = aligned ? fine.rows[r][c] : interpolate(fx, fy, base.rows[r][0]);
      out.rows[r].push_back(relative_change(base.rows[r][c], f));
    }
  }
  return out;
}

void write_csv(std::ostream& os, const Header& header, const Table& t) {
  for (const auto& [k, v] : header) os << "# " << k << " = " << v << '\n';
  for (const auto& [k, v] : t.notes) os << "# " << k << " = " << v << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c].name;
  }
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << format_number(r[c]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Header& header, const Table& t) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json h = nlohmann::ordered_json::object();
  for (const auto& [k, v] : header) h[k] = v;
  j["header"] = h;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.notes) notes[k] = v;
  j["notes"] = notes;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : t.columns) cols.push_back(c.name);
  j["columns"] = cols;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    // Round through the CSV text so both files carry the same numbers.
    for (double v : r) {
      if (std::isfinite(v)) {
        row.push_back(std::stod(format_number(v)));
      } else {
        row.push_back(nullptr);
      }
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

}  // namespace ringsqz::cli
