// Copyright 2026 The ergofatigue Authors
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


#include "ergo/fatigue.hpp"

namespace ergo {

std::string_view to_string(LimitStatus status) {
  switch (status) {
    case LimitStatus::Finite:
      return "finite";
    case LimitStatus::Overexertion:
      return "overexertion";
    case LimitStatus::NoFatigueLimit:
      return "no fatigue limit";
  }
  return "unknown";
}

std::string_view to_string(IndexForm form) {
  return form == IndexForm::TableConsistent ? "table" : "literal";
}

IndexForm parse_index_form(std::string_view text) {
  if (text == "table") return IndexForm::TableConsistent;
  if (text == "literal") return IndexForm::Literal;
  throw ParseError("unknown fatigue index mode '" + std::string(text) +
                   "' (expected table|literal)");
}

}  // namespace ergo
