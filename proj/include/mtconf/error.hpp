// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>

namespace mtconf {

enum class ErrorCategory {
  io,         // unreadable / unwritable files
  format,     // malformed file contents
  usage,      // bad command-line invocation
  alignment,  // parallel inputs whose line or token counts disagree
  domain,     // invalid argument to an operation (k=0, empty corpus, ...)
};

const char* to_string(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace mtconf
