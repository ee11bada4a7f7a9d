#ifndef VNDN_TABLE_FACE_HPP
#define VNDN_TABLE_FACE_HPP

#include "vndn/common.hpp"

#include <cstdint>
#include <string_view>

namespace vndn::table {

enum class FaceKind : uint8_t {
  App,
  WirelessAdhoc,
};

inline std::string_view
toString(FaceKind kind)
{
  return kind == FaceKind::App ? "app" : "wireless";
}

struct Face
{
  FaceId id = INVALID_FACE;
  FaceKind kind = FaceKind::App;
  NodeId ownerNode = 0;
};

} // namespace vndn::table

#endif // VNDN_TABLE_FACE_HPP
