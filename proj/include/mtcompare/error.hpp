#pragma once

#include <stdexcept>
#include <string>

namespace mtcompare {

// Malformed or inconsistent input data. The message names the offending
// file, segment and token where they are known.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace mtcompare
