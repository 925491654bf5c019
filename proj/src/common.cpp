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


#include "ergo/common.hpp"

#include <string>

namespace ergo {

std::string_view to_string(Gender gender) {
  return gender == Gender::Male ? "male" : "female";
}

Gender parse_gender(std::string_view text) {
  if (text == "male") return Gender::Male;
  if (text == "female") return Gender::Female;
  throw ParseError("unknown gender '" + std::string(text) + "' (expected male|female)");
}

}  // namespace ergo
