// Copyright 2026 The netfed Authors
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

#ifndef NETFED_ERROR_H_
#define NETFED_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace netfed {

enum class ErrorCode {
  kParse,
  kValidation,
  kEmptyCoalition,
  kCapacity,
  kCapExceeded,
  kDomain,
  kIllPosed,
  kUnsettleable,
  kIo,
  kUsage,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netfed

#endif  // NETFED_ERROR_H_
