#pragma once

#include <stdexcept>
#include <string>

namespace qmv {

enum class ErrorCode {
  InvalidArgument,  // bad parameters, dimension mismatch, malformed input
  Budget,           // a desk-scale cap was exceeded without the unsafe override
  Convergence,      // resampling did not converge within max_rounds
  Io,               // file read/write/parse failure
  Internal,         // broken invariant; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace qmv
