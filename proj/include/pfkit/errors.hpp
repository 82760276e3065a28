#pragma once

#include <stdexcept>
#include <string>

namespace pfkit {

// Base class for all library errors. Subclasses carry structured payloads
// where callers need to inspect them (witness values, labels).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DescriptorMismatch : Error {
    using Error::Error;
};
struct NonUnit : Error {
    using Error::Error;
};
struct UnsupportedDescriptor : Error {
    using Error::Error;
};
struct UnsupportedFactorization : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct NotMember : Error {
    using Error::Error;
};
struct NotFundamental : Error {
    using Error::Error;
};
struct NonExhaustiveFun : Error {
    using Error::Error;
};
struct ZeroPivot : Error {
    using Error::Error;
};
struct NotAForest : Error {
    using Error::Error;
};
struct NotACycle : Error {
    using Error::Error;
};
struct NotABasis : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct DepthExceeded : Error {
    using Error::Error;
};
struct OverlappingSets : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct SourceMismatch : Error {
    using Error::Error;
};
struct InvalidMatrix : Error {
    using Error::Error;
};
struct NotAHomomorphism : Error {
    using Error::Error;
};
struct NoDisplay : Error {
    using Error::Error;
};

}  // namespace pfkit
