// Copyright 2026 The seqtail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace seqtail {

/// Shortest decimal representation that round-trips the double exactly.
/// Locale-independent.
std::string format_number(double v);

/// CSV writer with LF line endings. Writes to "<path>.tmp" and renames on
/// close() so readers never see a partial file.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool closed_ = false;
};

std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Reads a single-column CSV of one value per line; `header` skips line one.
std::vector<double> read_value_column(const std::string& path, bool header);

}  // namespace seqtail
