#ifndef SURVBOOST_ERRORS_HPP
#define SURVBOOST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace survboost {

/// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Errors caused by malformed input files or invalid user-supplied values.
/// The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Errors raised while building or evaluating models on well-formed input.
/// The CLI maps these to exit code 1.
class ModelError : public Error {
public:
    using Error::Error;
};

class MalformedCsv : public InputError { public: using InputError::InputError; };
class MissingOutcomeColumn : public InputError { public: using InputError::InputError; };
class InvalidOutcomeValue : public InputError { public: using InputError::InputError; };
class InvalidSpec : public InputError { public: using InputError::InputError; };

class EmptyColumn : public ModelError { public: using ModelError::ModelError; };
class NoLabeledSamples : public ModelError { public: using ModelError::ModelError; };
class EmptyNode : public ModelError { public: using ModelError::ModelError; };
class SingleClassInput : public ModelError { public: using ModelError::ModelError; };
class NoUsefulWeakLearner : public ModelError { public: using ModelError::ModelError; };
class TimeExhausted : public ModelError { public: using ModelError::ModelError; };
class FoldTooSmall : public ModelError { public: using ModelError::ModelError; };
class LengthMismatch : public ModelError { public: using ModelError::ModelError; };
class EmptyMatrix : public ModelError { public: using ModelError::ModelError; };

} // namespace survboost

#endif // SURVBOOST_ERRORS_HPP
