#pragma once

#include <stdexcept>
#include <string>

namespace hyqgnn {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// core
class UnknownElement : public Error {
public:
    explicit UnknownElement(const std::string& symbol)
        : Error("unknown element symbol: '" + symbol + "'") {}
};

class InvalidComposition : public Error {
public:
    explicit InvalidComposition(const std::string& what) : Error(what) {}
};

// featurize
class ChargeNotNeutral : public Error {
public:
    explicit ChargeNotNeutral(const std::string& what) : Error(what) {}
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

class DegenerateGeometry : public Error {
public:
    explicit DegenerateGeometry(const std::string& what) : Error(what) {}
};

// gnn
class LayoutMismatch : public Error {
public:
    explicit LayoutMismatch(const std::string& what) : Error(what) {}
};

class EmptyNeighborhood : public Error {
public:
    explicit EmptyNeighborhood(const std::string& what) : Error(what) {}
};

// quantum
class ZeroVector : public Error {
public:
    explicit ZeroVector(const std::string& what) : Error(what) {}
};

class TooLong : public Error {
public:
    explicit TooLong(const std::string& what) : Error(what) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

// optimize
class BudgetExhausted : public Error {
public:
    explicit BudgetExhausted(const std::string& what) : Error(what) {}
};

// baseline
class WidthMismatch : public Error {
public:
    explicit WidthMismatch(const std::string& what) : Error(what) {}
};

class DegenerateData : public Error {
public:
    explicit DegenerateData(const std::string& what) : Error(what) {}
};

// harness
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error(what) {}
};

class ConstantTarget : public Error {
public:
    explicit ConstantTarget(const std::string& what) : Error(what) {}
};

class DegeneratePrediction : public Error {
public:
    explicit DegeneratePrediction(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace hyqgnn
