#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dapps {

// Base for every error the library raises on a contract breach.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoPath : public Error {
public:
    using Error::Error;
};

class UnknownNode : public Error {
public:
    explicit UnknownNode(const std::string& id) : Error("unknown node '" + id + "'"), id_(id) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class EmptyPath : public Error {
public:
    EmptyPath() : Error("transfer path is empty") {}
};

class NonPositivePeriod : public Error {
public:
    NonPositivePeriod() : Error("control period must be positive") {}
};

class InvalidPlan : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

class EmptyLog : public Error {
public:
    EmptyLog() : Error("simulation log is empty") {}
};

class MissingPriority : public Error {
public:
    using Error::Error;
};

class InvalidScenario : public Error {
public:
    using Error::Error;
};

class UnknownAxis : public Error {
public:
    explicit UnknownAxis(const std::string& axis) : Error("unknown sweep axis '" + axis + "'") {}
};

class UnknownFigure : public Error {
public:
    explicit UnknownFigure(const std::string& fig) : Error("unknown figure '" + fig + "'") {}
};

// Raised by `place` when some tasks cannot be assigned.
class Infeasible : public Error {
public:
    explicit Infeasible(std::vector<std::string> tasks);
    const std::vector<std::string>& tasks() const { return tasks_; }

private:
    std::vector<std::string> tasks_;
};

// Structured-text parse failure. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& field, const std::string& what, int line = 0, int column = 0);

    const std::string& field() const { return field_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string field_;
    int line_;
    int column_;
};

} // namespace dapps
