#pragma once

#include <stdexcept>
#include <string>

namespace crp {

enum class errc {
  prob_sum_mismatch,
  negative_value,
  negative_prob,
  q_out_of_range,
  incompatible_coupling,
  root_not_found,
  d_too_large,
  budget_exceeded,
  not_perfect_square,
  invalid_range,
  invalid_params,
  file_not_found,
  parse_error,
  validation_error,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw error(code, message); }

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::prob_sum_mismatch: return "ProbSumMismatch";
    case errc::negative_value: return "NegativeValue";
    case errc::negative_prob: return "NegativeProb";
    case errc::q_out_of_range: return "QOutOfRange";
    case errc::incompatible_coupling: return "IncompatibleCoupling";
    case errc::root_not_found: return "RootNotFound";
    case errc::d_too_large: return "DTooLarge";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_perfect_square: return "NotPerfectSquare";
    case errc::invalid_range: return "InvalidRange";
    case errc::invalid_params: return "InvalidParams";
    case errc::file_not_found: return "FileNotFound";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace crp
