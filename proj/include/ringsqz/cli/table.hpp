#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ringsqz::cli {

using Header = std::vector<std::pair<std::string, std::string>>;

struct Column {
  std::string name;
  bool compare = true;  // gets a rel_ column under --convergence
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  Header notes;  // per-run scalars written after the config header

  std::size_t index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

/// Relative change of each comparable column of `fine` against `base`, appended
/// as rel_<name>. Rows are matched by position when the first columns agree,
/// otherwise `fine` is interpolated linearly on its first column.
Table with_convergence(const Table& base, const Table& fine);

double relative_change(double base, double fine);

void write_csv(std::ostream& os, const Header& header, const Table& t);
void write_json(std::ostream& os, const Header& header, const Table& t);

}  // namespace ringsqz::cli
