// dg/errors.hpp - error base class shared by all modules
#pragma once

#include <stdexcept>
#include <string>

namespace dg {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Lookup of a nucleus id that is not part of the tree.
class UnknownId : public Error {
public:
  explicit UnknownId(int id)
      : Error("unknown nucleus id " + std::to_string(id)), id_(id) {}
  int id() const noexcept { return id_; }

private:
  int id_;
};

}  // namespace dg
