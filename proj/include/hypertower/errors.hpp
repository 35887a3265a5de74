#ifndef HYPERTOWER_ERRORS_HPP
#define HYPERTOWER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypertower
{

// Operands come from group instances of different arity.
class arity_mismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Operands belong to different fields.
class descriptor_mismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Negative level, mismatched levels, or projection to a higher level.
class level_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Inversion of zero (field element or coset).
class zero_division : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Hensel lifting preconditions (seed not a simple root, p = 2).
class hensel_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A lazily generated sequence broke compatibility or value constancy.
class contract_violation : public std::logic_error
{
public:
    contract_violation(const std::string &what, long level)
        : std::logic_error(what + " (level " + std::to_string(level) + ")"), m_level(level)
    {
    }

    long level() const noexcept
    {
        return m_level;
    }

private:
    long m_level;
};

// A bounded probe could not separate an element from zero, or a finite
// approximation was asked for more precision than it carries.
class precision_exhausted : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace hypertower

#endif
