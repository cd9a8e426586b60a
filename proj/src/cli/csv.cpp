#include "distroc/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "distroc/error.hpp"

namespace distroc::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ScoreSet ScoreTable::to_score_set() const {
  ScoreSet s;
  for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] ? s.pos : s.neg).push_back(scores[i]);
  return s;
}

ScoreTable parse_score_csv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw IoError(name + ":" + std::to_string(lineno) + ": " + what);
  };
  if (!std::getline(in, line)) {
    lineno = 1;
    fail("empty file");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,score,label") fail("header must be 'id,score,label'");

  ScoreTable t;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 3) fail("expected 3 columns");
    double score = 0.0;
    std::size_t pos = 0;
    try {
      score = std::stod(cells[1], &pos);
    } catch (const std::exception&) {
      fail("score is not a number");
    }
    if (pos != cells[1].size() || !std::isfinite(score)) fail("score is not a finite number");
    if (cells[2] != "0" && cells[2] != "1") fail("label must be 0 or 1");
    t.ids.push_back(cells[0]);
    t.scores.push_back(score);
    t.labels.push_back(cells[2] == "1" ? 1 : 0);
  }
  return t;
}

ScoreTable read_score_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_score_csv(buf.str(), path);
}

void write_score_csv(const std::string& path, const ScoreTable& table) {
  CsvWriter w(path);
  w.header({"id", "score", "label"});
  for (std::size_t i = 0; i < table.scores.size(); ++i) {
    w.row({table.ids[i], CsvWriter::real(table.scores[i]), std::to_string(table.labels[i])});
  }
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {}

CsvWriter::~CsvWriter() {
  if (!flushed_) {
    try {
      close();
    } catch (...) {
    }
  }
}

CsvWriter& CsvWriter::header(const std::vector<std::string>& columns) { return row(columns); }

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
  return *this;
}

std::string CsvWriter::real(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::close() {
  flushed_ = true;
  write_text_file(path_, buffer_);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace distroc::cli
