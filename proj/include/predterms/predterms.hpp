// Umbrella header: pulls in the whole public API.
#pragma once

#include "predterms/case_json.hpp"
#include "predterms/dataset.hpp"
#include "predterms/design.hpp"
#include "predterms/errors.hpp"
#include "predterms/formula.hpp"
#include "predterms/model.hpp"
#include "predterms/model_json.hpp"
#include "predterms/predscor.hpp"
#include "predterms/predsplot.hpp"
#include "predterms/scene.hpp"
#include "predterms/stats.hpp"
#include "predterms/style.hpp"
#include "predterms/svg.hpp"
#include "predterms/terms.hpp"
#include "predterms/textfmt.hpp"
