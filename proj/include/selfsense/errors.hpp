#pragma once

#include <stdexcept>
#include <string>

namespace selfsense {

/// Base class for all recoverable errors raised by this project.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SELFSENSE_DEFINE_ERROR(Name)                          \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(what) {}   \
  }

// simworld
SELFSENSE_DEFINE_ERROR(InsufficientHistory);

// fusion
SELFSENSE_DEFINE_ERROR(MalformedScan);
SELFSENSE_DEFINE_ERROR(NegativeTime);

// agentloop
SELFSENSE_DEFINE_ERROR(BackendUnavailable);
SELFSENSE_DEFINE_ERROR(AuthMissing);
SELFSENSE_DEFINE_ERROR(MalformedResponse);

// judge
SELFSENSE_DEFINE_ERROR(MalformedScore);
SELFSENSE_DEFINE_ERROR(EmptyRun);
SELFSENSE_DEFINE_ERROR(NonPositiveDimension);

// sem
SELFSENSE_DEFINE_ERROR(ZeroVariance);
SELFSENSE_DEFINE_ERROR(SingularStructure);
SELFSENSE_DEFINE_ERROR(NotPositiveDefinite);
SELFSENSE_DEFINE_ERROR(ZeroDf);

// runner
SELFSENSE_DEFINE_ERROR(MissingScores);
SELFSENSE_DEFINE_ERROR(ConfigError);
SELFSENSE_DEFINE_ERROR(IoError);

#undef SELFSENSE_DEFINE_ERROR

}  // namespace selfsense
