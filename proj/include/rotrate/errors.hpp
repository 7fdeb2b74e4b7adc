#pragma once

#include <stdexcept>
#include <string>

namespace rotrate {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// scene
class NonPositiveDepth : public Error {
public:
    using Error::Error;
};
class NegativeSigma : public Error {
public:
    using Error::Error;
};

// numdiff
class TooFewSamples : public Error {
public:
    using Error::Error;
};
class NonUniformSampling : public Error {
public:
    using Error::Error;
};
class NonMonotonicTime : public Error {
public:
    using Error::Error;
};

// estimator
class ZeroDisplacement : public Error {
public:
    using Error::Error;
};
class CoincidentDisplacements : public Error {
public:
    using Error::Error;
};
class NonPositiveOmegaSq : public Error {
public:
    using Error::Error;
};
class TimestampMismatch : public Error {
public:
    using Error::Error;
};

// segmentation
class EmptyInput : public Error {
public:
    using Error::Error;
};

// trackio
class MalformedHeader : public Error {
public:
    using Error::Error;
};
class NonNumericField : public Error {
public:
    NonNumericField(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};
class DuplicateTimestamp : public Error {
public:
    using Error::Error;
};
class EmptyFile : public Error {
public:
    using Error::Error;
};

} // namespace rotrate
