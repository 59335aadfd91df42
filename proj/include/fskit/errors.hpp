#pragma once

#include <stdexcept>
#include <string>

namespace fskit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };

// presentation validation
class ValidationError : public Error { public: using Error::Error; };
class LeafCountMismatch : public ValidationError { public: using ValidationError::ValidationError; };
class UnknownColour : public ValidationError { public: using ValidationError::ValidationError; };

class UnsupportedClass : public Error { public: using Error::Error; };
class RepresentationOverflow : public Error { public: using Error::Error; };
class UndefinedAt : public Error { public: using Error::Error; };
class NotTotal : public Error { public: using Error::Error; };
class NotBijective : public Error { public: using Error::Error; };
class NotOrderPreserving : public Error { public: using Error::Error; };
class NotCyclicOrderPreserving : public Error { public: using Error::Error; };
class WrongShape : public Error { public: using Error::Error; };

} // namespace fskit
