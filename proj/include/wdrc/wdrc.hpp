#pragma once

#include "wdrc/canonical.hpp"
#include "wdrc/circulant.hpp"
#include "wdrc/classify.hpp"
#include "wdrc/constructions.hpp"
#include "wdrc/report_json.hpp"
#include "wdrc/residues.hpp"
#include "wdrc/scheme.hpp"
#include "wdrc/sring.hpp"
#include "wdrc/wdr.hpp"
