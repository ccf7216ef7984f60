// Copyright 2026 The ipboost Authors
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

#ifndef IPBOOST_SRC_LOGGING_H_
#define IPBOOST_SRC_LOGGING_H_

#include <spdlog/spdlog.h>

namespace ipboost {

// Library logger. The level comes from IPBOOST_LOG_LEVEL (trace, debug,
// info, warn, error, off) and defaults to warn.
spdlog::logger& Log();

}  // namespace ipboost

#endif  // IPBOOST_SRC_LOGGING_H_
