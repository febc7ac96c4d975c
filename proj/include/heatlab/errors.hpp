#pragma once

#include <stdexcept>
#include <string>

namespace heatlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error { public: using Error::Error; };
class ContractError : public Error { public: using Error::Error; };
class DegenerateModel : public Error { public: using Error::Error; };
class SingularParameter : public Error { public: using Error::Error; };
class InvalidLimit : public Error { public: using Error::Error; };
class InvalidKind : public Error { public: using Error::Error; };
class RepeatedRoot : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

// Raised by the simulators; step is the index of the first offending step.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, long step) : Error(what), step_(step) {}
    long step() const { return step_; }
private:
    long step_;
};

class PositivityError : public DivergenceError {
public:
    using DivergenceError::DivergenceError;
};

}  // namespace heatlab
