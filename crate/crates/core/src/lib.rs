//! Directional stroke analysis and glyph classification.
//!
//! The crate is `no_std` and only needs `alloc`. It covers the whole
//! in-memory pipeline for isolated printed glyphs:
//!
//! * [`imaging`]: raster containers, median filtering, Otsu thresholding,
//!   hole filling, bounding boxes and connected components.
//! * [`morphology`]: binary erosion, dilation and opening with directional
//!   line structuring elements.
//! * [`features`]: the 13-dimensional spatial feature vector and min-max
//!   normalization.
//! * [`classify`]: RBF/linear kernels, an SMO-trained binary SVM, the
//!   one-vs-one multiclass ensemble and a k-nearest-neighbour baseline.
//! * [`corpus`]: labelled samples, stratified splitting and synthetic
//!   size/noise augmentation.
//!
//! File formats, manifests and the command line live in the `glyphstroke`
//! companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classify;
pub mod corpus;
mod error;
pub mod features;
pub mod imaging;
pub mod morphology;

pub use error::{Error, Result};
