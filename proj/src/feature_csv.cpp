#include "itd/feature_csv.hpp"

#include <charconv>
#include <fstream>
#include <limits>

#include "itd/error.hpp"
#include "itd/text.hpp"

namespace itd {

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "user,day";
  for (const auto& name : table.column_names) out << ',' << name;
  out << ",insider\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (table.has_keys()) out << table.row_keys[r].user << ',' << format_day(table.row_keys[r].day);
    else out << ',';
    for (double v : table.values.row(r)) out << ',' << format_shortest(v);
    out << ',' << table.labels[r] << '\n';
  }
  if (!out) throw IoError("failed writing feature table");
}

FeatureTable read_feature_csv(std::istream& in) {
  if (!in) throw IoError("feature table stream is not readable");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("feature table is empty (missing header)");
  const auto header = split_csv_line(strip_line(line, true));
  if (header.size() < 3 || trim(header[0]) != "user" || trim(header[1]) != "day" ||
      trim(header.back()) != "insider")
    throw SchemaError("feature table header must be 'user,day,<features...>,insider'");

  FeatureTable table;
  for (std::size_t i = 2; i + 1 < header.size(); ++i) table.column_names.emplace_back(trim(header[i]));
  const std::size_t d = table.column_names.size();
  table.values = Matrix(0, d);
  std::vector<double> row(d);
  bool keyed = true;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = strip_line(line, false);
    if (trim(body).empty()) continue;
    const auto fields = split_csv_line(body);
    const std::string where = "feature table line " + std::to_string(line_no);
    if (fields.size() != header.size())
      throw SchemaError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                        std::to_string(fields.size()));
    const std::string_view user = trim(fields[0]);
    const std::string_view day_text = trim(fields[1]);
    const bool has_key = !user.empty() || !day_text.empty();
    if (table.rows() == 0) keyed = has_key;
    if (has_key != keyed) throw SchemaError(where + ": row keys must be present on all rows or none");
    if (keyed) {
      auto day = parse_day(day_text);
      if (user.empty() || !day) throw SchemaError(where + ": invalid (user, day) key");
      table.row_keys.push_back(RowKey{std::string(user), *day});
    }
    for (std::size_t c = 0; c < d; ++c) {
      const std::string_view cell = trim(fields[c + 2]);
      const std::string lower = to_lower(cell);
      if (cell.empty() || lower == "na" || lower == "nan") {
        row[c] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      auto v = parse_double(cell);
      if (!v) throw SchemaError(where + ": column '" + table.column_names[c] + "' is not numeric");
      row[c] = *v;
    }
    const std::string_view label_text = trim(fields.back());
    int label = 0;
    auto [ptr, ec] = std::from_chars(label_text.data(), label_text.data() + label_text.size(), label);
    if (ec != std::errc() || ptr != label_text.data() + label_text.size())
      throw SchemaError(where + ": insider label '" + std::string(label_text) + "' is not an integer");
    table.values.append_row(row);
    table.labels.push_back(label);
  }
  if (in.bad()) throw IoError("failed reading feature table");
  return table;
}

FeatureTable read_feature_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_feature_csv(in);
}

void write_feature_csv_file(const std::string& path, const FeatureTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_feature_csv(out, table);
}

}  // namespace itd
