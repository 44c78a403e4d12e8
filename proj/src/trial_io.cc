// src/trial_io.cc

// Copyright 2026 mcse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mcse/trial_io.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mcse/io_util.h"

namespace mcse {

TrialSet ReadTrials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("trials: cannot open " + path);
  TrialSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw FormatError("trials: line " + std::to_string(line_no) + ": expected label,score");
    }
    const std::string label = line.substr(0, comma);
    Trial t;
    if (label == "target") {
      t.label = TrialLabel::kTarget;
    } else if (label == "nontarget") {
      t.label = TrialLabel::kNontarget;
    } else {
      throw FormatError("trials: line " + std::to_string(line_no) + ": unknown label \"" +
                        label + "\"");
    }
    const std::string score = line.substr(comma + 1);
    char* end = nullptr;
    t.score = std::strtod(score.c_str(), &end);
    if (end == score.c_str() || !std::isfinite(t.score)) {
      throw FormatError("trials: line " + std::to_string(line_no) + ": bad score \"" +
                        score + "\"");
    }
    set.trials.push_back(t);
  }
  return set;
}

void WriteTrials(const TrialSet& trials, const std::string& path) {
  std::ostringstream out;
  out.precision(17);
  for (const Trial& t : trials.trials) {
    out << (t.label == TrialLabel::kTarget ? "target" : "nontarget") << "," << t.score
        << "\n";
  }
  AtomicWriteFile(path, out.str());
}

}  // namespace mcse
