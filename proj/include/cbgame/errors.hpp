#pragma once

#include <stdexcept>
#include <string>

namespace cbgame {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range vertex, probability outside [0,1], malformed partition, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A claimed edge is absent, already claimed, repeated or over the bias.
class IllegalMoveError : public Error {
 public:
  using Error::Error;
};

/// Connector claimed an edge that does not touch her current vertex set.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

/// A size guard (solver board size, candidate budget) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Box game: no free element is left for BoxBreaker.
class NoMoveError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbgame
