#pragma once

#include <stdexcept>
#include <string>

namespace polyapx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad parameters or malformed input (CLI exit 2)
struct InvalidArgument : Error {
    using Error::Error;
};

struct BackendMismatch : Error {
    using Error::Error;
};

struct RepeatedNode : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// a theorem hypothesis does not hold for the supplied input
struct HypothesisViolated : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// float result at precision P disagrees with the 2P rerun (CLI exit 4)
struct PrecisionRejected : Error {
    using Error::Error;
};

// a certificate did not hold (CLI exit 3)
struct VerificationFailed : Error {
    using Error::Error;
};

}  // namespace polyapx
