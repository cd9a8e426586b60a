#pragma once

#include <string>
#include <vector>

#include "distroc/roc.hpp"

namespace distroc::cli {

struct ScoreTable {
  std::vector<std::string> ids;
  std::vector<double> scores;
  std::vector<int> labels;

  ScoreSet to_score_set() const;
};

// Strict `id,score,label` reader: exact header, finite scores, labels 0/1.
// Throws IoError naming the file and line.
ScoreTable read_score_csv(const std::string& path);
ScoreTable parse_score_csv(const std::string& text, const std::string& name = "<input>");

void write_score_csv(const std::string& path, const ScoreTable& table);

// Minimal CSV writer; reals use 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter& header(const std::vector<std::string>& columns);
  CsvWriter& row(const std::vector<std::string>& cells);
  // Writes the file; the destructor does this if close() was not called.
  void close();
  static std::string real(double v);

 private:
  std::string path_;
  std::string buffer_;
  bool flushed_ = false;
};

void write_text_file(const std::string& path, const std::string& text);

}  // namespace distroc::cli
