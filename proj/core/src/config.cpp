namespace flowlab {}
