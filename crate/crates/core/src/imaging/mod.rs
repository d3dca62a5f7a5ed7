//! Raster containers and the grayscale-to-glyph preprocessing chain.
//!
//! Typical use on a scanned glyph: [`median_filter`] the grayscale raster,
//! pick a global threshold with [`otsu_threshold`], [`binarize`], then crop
//! to the [`bounding_box`].

mod filter;
mod label;
mod raster;
mod region;
mod threshold;

pub use filter::median_filter;
pub use label::{connected_components, ComponentSet, Connectivity};
pub use raster::{BinaryImage, BoundingBox, GrayImage};
pub use region::{bounding_box, crop, fill_holes};
pub use threshold::{binarize, otsu_threshold};
