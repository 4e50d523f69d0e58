#pragma once

#include "fdhom/field.hpp"
#include "fdhom/matrix.hpp"
#include "fdhom/quiver.hpp"
#include "fdhom/groebner.hpp"
#include "fdhom/algebra.hpp"
#include "fdhom/rep.hpp"
#include "fdhom/hom.hpp"
#include "fdhom/tensor.hpp"
#include "fdhom/resolution.hpp"
#include "fdhom/ext.hpp"
#include "fdhom/transfer.hpp"
#include "fdhom/gorenstein.hpp"
#include "fdhom/hochschild.hpp"
#include "fdhom/semtl.hpp"
#include "fdhom/fixtures.hpp"
