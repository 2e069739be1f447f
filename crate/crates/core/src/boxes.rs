/// One axis-aligned crop rectangle with its captured saliency mass.
///
/// All coordinates are 0-indexed and inclusive, so a single pixel is
/// `top == bottom`, `left == right`. Bounds against a particular map are
/// checked at the operations that take both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CropBox {
    pub top: usize,
    pub left: usize,
    pub bottom: usize,
    pub right: usize,
    pub mass: f64,
}

impl CropBox {
    /// A box with zero recorded mass. Panics if the corners are inverted.
    pub fn new(top: usize, left: usize, bottom: usize, right: usize) -> Self {
        Self::with_mass(top, left, bottom, right, 0.0)
    }

    /// A box carrying a known captured mass.
    pub fn with_mass(top: usize, left: usize, bottom: usize, right: usize, mass: f64) -> Self {
        assert!(top <= bottom && left <= right, "inverted crop box corners");
        Self { top, left, bottom, right, mass }
    }

    pub fn width(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn height(&self) -> usize {
        self.bottom - self.top + 1
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    /// True if the two boxes share at least one pixel.
    pub fn intersects(&self, other: &CropBox) -> bool {
        self.top <= other.bottom
            && other.top <= self.bottom
            && self.left <= other.right
            && other.left <= self.right
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_of_single_pixel() {
        let b = CropBox::new(2, 3, 2, 3);
        assert_eq!(b.width(), 1);
        assert_eq!(b.height(), 1);
        assert_eq!(b.area(), 1);
    }

    #[test]
    #[should_panic(expected = "inverted crop box corners")]
    fn rejects_inverted_corners() {
        let _ = CropBox::new(3, 0, 2, 0);
    }

    #[test]
    fn intersection_cases() {
        let a = CropBox::new(0, 0, 3, 3);
        assert!(a.intersects(&CropBox::new(3, 3, 5, 5))); // corner touch
        assert!(a.intersects(&CropBox::new(1, 1, 2, 2))); // containment
        assert!(!a.intersects(&CropBox::new(0, 4, 3, 6))); // side by side
        assert!(!a.intersects(&CropBox::new(4, 0, 6, 3))); // stacked
        assert!(!a.intersects(&CropBox::new(4, 4, 6, 6))); // diagonal
    }
}
