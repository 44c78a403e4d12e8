// include/mcse/trial_io.h

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

#ifndef MCSE_TRIAL_IO_H_
#define MCSE_TRIAL_IO_H_

#include <string>

#include "mcse/metrics.h"

namespace mcse {

// Trial files are CSV lines "label,score" with label in {target, nontarget}.
TrialSet ReadTrials(const std::string& path);
void WriteTrials(const TrialSet& trials, const std::string& path);

}  // namespace mcse

#endif  // MCSE_TRIAL_IO_H_
