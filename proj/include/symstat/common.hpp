#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace symstat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Base class for all errors raised by the library. Subclasses indicate the
// stage that failed so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

class SpectralError : public Error {
public:
    explicit SpectralError(const std::string& what) : Error(what) {}
};

class StructureError : public Error {
public:
    explicit StructureError(const std::string& what) : Error(what) {}
};

class DistributionError : public Error {
public:
    explicit DistributionError(const std::string& what) : Error(what) {}
};

class LawError : public Error {
public:
    explicit LawError(const std::string& what) : Error(what) {}
};

class VerifyError : public Error {
public:
    explicit VerifyError(const std::string& what) : Error(what) {}
};

} // namespace symstat
