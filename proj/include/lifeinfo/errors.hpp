#pragma once

#include <stdexcept>
#include <string>

namespace lifeinfo {

// Error taxonomy shared by all modules. Everything derives from
// std::runtime_error so callers can catch broadly or precisely.

struct NonFiniteIntegrand : std::runtime_error {
    explicit NonFiniteIntegrand(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeDensity : std::runtime_error {
    explicit NegativeDensity(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroRegionProbability : std::runtime_error {
    explicit ZeroRegionProbability(const std::string& what) : std::runtime_error(what) {}
};

struct NotAProbabilityVector : std::runtime_error {
    explicit NotAProbabilityVector(const std::string& what) : std::runtime_error(what) {}
};

struct SpecialFunctionDomain : std::runtime_error {
    explicit SpecialFunctionDomain(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidTTE : std::runtime_error {
    explicit InvalidTTE(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidProbabilityOrder : std::runtime_error {
    explicit InvalidProbabilityOrder(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(const std::string& what) : std::runtime_error(what) {}
};

struct NotSymmetricPair : std::runtime_error {
    explicit NotSymmetricPair(const std::string& what) : std::runtime_error(what) {}
};

struct NotBLM : std::runtime_error {
    explicit NotBLM(const std::string& what) : std::runtime_error(what) {}
};

struct EnvelopeTooLoose : std::runtime_error {
    explicit EnvelopeTooLoose(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lifeinfo
