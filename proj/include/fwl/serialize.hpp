#pragma once

#include <string>

#include "fwl/body.hpp"
#include "fwl/gridfn.hpp"
#include "fwl/polyhedral.hpp"

namespace fwl {

// JSON round trip; +inf grid values serialize as null.
std::string to_json(const PolyhedralFn& u);
std::string to_json(const GridFn& u);
std::string to_json(const EpigraphBody& k);

PolyhedralFn polyhedral_from_json(const std::string& text);
GridFn grid_from_json(const std::string& text);
EpigraphBody body_from_json(const std::string& text);

}  // namespace fwl
