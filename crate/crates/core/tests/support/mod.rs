pub mod figure_eight;
