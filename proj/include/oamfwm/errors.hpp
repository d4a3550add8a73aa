#pragma once

#include <stdexcept>
#include <string>

namespace oamfwm {

// A charge outside the {-1, 0, +1} logical alphabet reached a decoder.
class AlphabetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A gate configuration produced an undecodable signal or an inconsistent
// beam arrangement.
class WiringError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace oamfwm
