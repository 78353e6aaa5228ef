# 核心模块：PA 语法、编码、检查器、机器与方程
