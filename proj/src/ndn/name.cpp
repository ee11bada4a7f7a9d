#include "vndn/ndn/name.hpp"

#include <algorithm>

namespace vndn::ndn {

namespace {

void
checkComponent(const std::string& component)
{
  if (component.empty()) {
    throw Name::Error(Name::ErrorCode::EmptyComponent, "name component is empty");
  }
  if (component.size() > Name::MAX_COMPONENT_LENGTH) {
    throw Name::Error(Name::ErrorCode::ComponentTooLong,
                      "name component exceeds " + std::to_string(Name::MAX_COMPONENT_LENGTH) +
                      " bytes");
  }
}

bool
needsEscape(unsigned char c)
{
  return c == '/' || c == '%' || c <= 0x20 || c >= 0x7f;
}

int
hexValue(char c)
{
  if (c >= '0' && c <= '9')
    return c - '0';
  if (c >= 'a' && c <= 'f')
    return c - 'a' + 10;
  if (c >= 'A' && c <= 'F')
    return c - 'A' + 10;
  return -1;
}

std::string
decodeComponent(std::string_view text)
{
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 2 >= text.size()) {
      throw Name::Error(Name::ErrorCode::BadEscape,
                        "truncated percent-escape in '" + std::string(text) + "'");
    }
    int hi = hexValue(text[i + 1]);
    int lo = hexValue(text[i + 2]);
    if (hi < 0 || lo < 0) {
      throw Name::Error(Name::ErrorCode::BadEscape,
                        "malformed percent-escape in '" + std::string(text) + "'");
    }
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

} // namespace

Name::Name(std::vector<std::string> components)
  : m_components(std::move(components))
{
  if (m_components.empty()) {
    throw Error(ErrorCode::EmptyName, "name has no components");
  }
  for (const auto& c : m_components) {
    checkComponent(c);
  }
}

Name::Name(std::initializer_list<std::string> components)
  : Name(std::vector<std::string>(components))
{
}

Name
Name::parseUri(std::string_view uri)
{
  if (uri.empty() || uri.front() != '/') {
    throw Error(ErrorCode::NotAbsolute, "name URI must begin with '/': '" + std::string(uri) + "'");
  }
  if (uri.size() == 1) {
    throw Error(ErrorCode::EmptyName, "name URI has no components");
  }

  std::vector<std::string> components;
  size_t pos = 1;
  while (true) {
    size_t slash = uri.find('/', pos);
    std::string_view piece = uri.substr(pos, slash == std::string_view::npos ? std::string_view::npos
                                                                             : slash - pos);
    if (piece.empty()) {
      throw Error(ErrorCode::EmptyComponent, "empty component in '" + std::string(uri) + "'");
    }
    components.push_back(decodeComponent(piece));
    if (slash == std::string_view::npos)
      break;
    pos = slash + 1;
  }
  return Name(std::move(components));
}

std::string
Name::toUri() const
{
  static constexpr char HEX[] = "0123456789ABCDEF";
  std::string out;
  for (const auto& component : m_components) {
    out.push_back('/');
    for (unsigned char c : component) {
      if (needsEscape(c)) {
        out.push_back('%');
        out.push_back(HEX[c >> 4]);
        out.push_back(HEX[c & 0x0f]);
      }
      else {
        out.push_back(static_cast<char>(c));
      }
    }
  }
  return out;
}

Name
Name::getPrefix(size_t n) const
{
  Name prefix;
  prefix.m_components.assign(m_components.begin(),
                             m_components.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
  return prefix;
}

Name&
Name::append(std::string component)
{
  checkComponent(component);
  m_components.push_back(std::move(component));
  return *this;
}

bool
Name::isPrefixOf(const Name& other) const noexcept
{
  if (size() > other.size())
    return false;
  for (size_t i = 0; i < size(); ++i) {
    if (m_components[i] != other.m_components[i])
      return false;
  }
  return true;
}

std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.toUri();
}

} // namespace vndn::ndn

size_t
std::hash<vndn::ndn::Name>::operator()(const vndn::ndn::Name& name) const noexcept
{
  size_t seed = name.size();
  for (const auto& c : name.components()) {
    seed ^= std::hash<std::string>{}(c) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}
