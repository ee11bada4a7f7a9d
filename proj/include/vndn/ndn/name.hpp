#ifndef VNDN_NDN_NAME_HPP
#define VNDN_NDN_NAME_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vndn::ndn {

/** \brief Hierarchical content name: an ordered list of non-empty byte-string components.
 *
 *  The URI form is "/" followed by the components joined by "/". Inside a component
 *  '/', '%', whitespace, and non-printable bytes are percent-encoded, so any name survives
 *  a trip through its URI and through whitespace-separated log lines.
 */
class Name
{
public:
  enum class ErrorCode {
    NotAbsolute,
    EmptyName,
    EmptyComponent,
    ComponentTooLong,
    BadEscape,
  };

  class Error : public std::invalid_argument
  {
  public:
    Error(ErrorCode code, const std::string& what)
      : std::invalid_argument(what)
      , m_code(code)
    {
    }

    ErrorCode
    code() const noexcept
    {
      return m_code;
    }

  private:
    ErrorCode m_code;
  };

  static constexpr size_t MAX_COMPONENT_LENGTH = 255;

  /// An empty placeholder. Not a valid name on its own; every factory below produces a valid one.
  Name() = default;

  /// \throw Error if any component is empty or too long, or if the list is empty
  explicit
  Name(std::vector<std::string> components);

  Name(std::initializer_list<std::string> components);

  static Name
  parseUri(std::string_view uri);

  std::string
  toUri() const;

  size_t
  size() const noexcept
  {
    return m_components.size();
  }

  bool
  empty() const noexcept
  {
    return m_components.empty();
  }

  const std::string&
  at(size_t i) const
  {
    return m_components.at(i);
  }

  const std::string&
  operator[](size_t i) const noexcept
  {
    return m_components[i];
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_components;
  }

  /// The first \p n components.
  Name
  getPrefix(size_t n) const;

  Name&
  append(std::string component);

  /// True iff this name's components are an initial segment of \p other's.
  bool
  isPrefixOf(const Name& other) const noexcept;

  friend bool
  operator==(const Name&, const Name&) = default;

  friend std::strong_ordering
  operator<=>(const Name& a, const Name& b)
  {
    return a.m_components <=> b.m_components;
  }

private:
  std::vector<std::string> m_components;
};

std::ostream&
operator<<(std::ostream& os, const Name& name);

} // namespace vndn::ndn

template<>
struct std::hash<vndn::ndn::Name>
{
  size_t
  operator()(const vndn::ndn::Name& name) const noexcept;
};

#endif // VNDN_NDN_NAME_HPP
