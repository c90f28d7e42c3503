//! Prints the first Golay pair of the requested length found by exhaustive search.

use seqcorr::rsl::search_golay_exhaustive;

fn main() {
    let len: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10);
    let start = std::time::Instant::now();
    match search_golay_exhaustive(len) {
        Some(pair) => print!("{pair}"),
        None => println!("# no pair of length {len}"),
    }
    eprintln!("{:?}", start.elapsed());
}
