#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import setuptools

setuptools.setup()
