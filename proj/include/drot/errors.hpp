#pragma once

#include <stdexcept>
#include <string>

namespace drot {

// Base for every failure the library reports on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class CriticalValue : public Error {
public:
    using Error::Error;
};

class IterationCap : public Error {
public:
    using Error::Error;
};

class NotRegular : public Error {
public:
    using Error::Error;
};

class EmptyDomain : public Error {
public:
    using Error::Error;
};

class InsufficientPopulation : public Error {
public:
    using Error::Error;
};

} // namespace drot
