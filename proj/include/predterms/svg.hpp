#pragma once

#include <string>

#include "predterms/scene.hpp"
#include "predterms/style.hpp"

namespace predterms {

/// Deterministic renderer: the same scene and style always produce
/// byte-identical SVG. Throws PlotError on an empty scene or when the
/// margins leave no drawing area.
std::string render_svg(const PlotScene& scene, const Style& style);

std::string xml_escape(const std::string& s);

}  // namespace predterms
