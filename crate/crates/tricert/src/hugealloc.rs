//! Global allocator that asks for transparent huge pages on large blocks.
//! The certifier reads its big arrays in DFS order, which is random in
//! memory; with 4 KiB pages most of those reads also miss the TLB.

use std::alloc::{GlobalAlloc, Layout, System};

/// Huge page size.
const HUGE: usize = 2 << 20;
/// Blocks from this size on get whole huge pages of their own.
const LARGE: usize = 256 << 10;

pub struct HugePages;

fn huge_layout(layout: Layout) -> Layout {
    let size = layout.size().div_ceil(HUGE) * HUGE;
    Layout::from_size_align(size, layout.align().max(HUGE)).unwrap()
}

#[cfg(target_os = "linux")]
unsafe fn advise(p: *mut u8, len: usize) {
    libc::madvise(p.cast(), len, libc::MADV_HUGEPAGE);
}

#[cfg(not(target_os = "linux"))]
unsafe fn advise(_: *mut u8, _: usize) {}

unsafe impl GlobalAlloc for HugePages {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        if layout.size() < LARGE {
            return System.alloc(layout);
        }
        let l = huge_layout(layout);
        let p = System.alloc(l);
        if !p.is_null() {
            advise(p, l.size());
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        if layout.size() < LARGE {
            return System.alloc_zeroed(layout);
        }
        // advise before the pages are touched
        let p = self.alloc(layout);
        if !p.is_null() {
            p.write_bytes(0, layout.size());
        }
        p
    }

    unsafe fn dealloc(&self, p: *mut u8, layout: Layout) {
        if layout.size() < LARGE {
            System.dealloc(p, layout)
        } else {
            System.dealloc(p, huge_layout(layout))
        }
    }

    unsafe fn realloc(&self, p: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        if layout.size() < LARGE && new_size < LARGE {
            return System.realloc(p, layout, new_size);
        }
        let new_layout = Layout::from_size_align_unchecked(new_size, layout.align());
        let q = self.alloc(new_layout);
        if !q.is_null() {
            std::ptr::copy_nonoverlapping(p, q, layout.size().min(new_size));
            self.dealloc(p, layout);
        }
        q
    }
}
